#pragma once

// File formats: domain and tiling JSON, atomic writes, deterministic
// number text, and grid fields as flat binary plus a JSON header.
//
// Domain JSON ("type" selects the variant):
//   {"type": "interval_union", "intervals": [[a, b], ...]}
//   {"type": "box", "sides": [[a, b], ...]}
//   {"type": "polygon", "vertices": [[x, y], ...]}
//   {"type": "copy", "isometry": ISO, "base": DOMAIN}
//   {"type": "union", "members": [DOMAIN, ...]}
//   {"type": "product", "factors": [DOMAIN, DOMAIN, ...]}
// ISO is {"linear": [[...], ...], "translation": [...]}, or one of the
// shorthands {"translate": [...]}, {"rotate": angle, "center": [x, y]},
// {"reflect": angle, "point": [x, y]}.
//
// Tiling JSON:
//   {"type": "tiling", "shape": "square" | null, "scale": s, "kind": K,
//    "window": [[a, b], [c, d]], "prototile": DOMAIN,
//    "isometries": [ISO, ...], "lattice": [[...], [...]] | null,
//    "motif": [ISO, ...]}

#include <filesystem>
#include <string>

#include "json.hpp"
#include "polya/extension.hpp"
#include "polya/geometry.hpp"
#include "polya/tiling.hpp"

namespace polya::io {

using json = nlohmann::ordered_json;

geometry::Domain domain_from_json(const json& j);
json domain_to_json(const geometry::Domain& d);

geometry::Isometry isometry_from_json(const json& j, int dim);
json isometry_to_json(const geometry::Isometry& iso);

tiling::Tiling tiling_from_json(const json& j);
json tiling_to_json(const tiling::Tiling& t);

// Parse failures and schema errors become InputError naming the file.
json read_json_file(const std::filesystem::path& path);
geometry::Domain load_domain(const std::filesystem::path& path);
tiling::Tiling load_tiling(const std::filesystem::path& path);

// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& bytes);

// Shortest text that reads back to the same double; "nan", "inf", "-inf".
std::string format_number(double v);

// Two files: <base>.bin holds nodal values as little-endian float64 in
// flat order (x fastest), <base>.json the header with spacing, extent and
// the run-length encoded mask.
void write_field(const std::filesystem::path& base, const extension::GridField& f);
extension::GridField read_field(const std::filesystem::path& base);

json mask_rle(const std::vector<std::uint8_t>& mask);
std::vector<std::uint8_t> mask_from_rle(const json& runs, std::size_t size);

}  // namespace polya::io
