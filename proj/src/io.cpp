#include "polya/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "polya/error.hpp"

namespace polya::io {
namespace {

using geometry::Domain;
using geometry::Interval;
using geometry::Isometry;
using geometry::Vec2;

double num(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(std::string(what) + ": not finite");
  return v;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object with \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<double> vec_of(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(num(x, what));
  return v;
}

Interval pair_of(const json& j, const char* what) {
  const auto v = vec_of(j, what);
  if (v.size() != 2) throw InputError(std::string(what) + ": expected [a, b]");
  return {v[0], v[1]};
}

std::vector<Interval> pairs_of(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array of [a, b]");
  std::vector<Interval> out;
  for (const auto& x : j) out.push_back(pair_of(x, what));
  return out;
}

Vec2 vec2_of(const json& j, const char* what) {
  const auto v = vec_of(j, what);
  if (v.size() != 2) throw InputError(std::string(what) + ": expected [x, y]");
  return {v[0], v[1]};
}

json pairs_json(const std::vector<Interval>& iv) {
  json a = json::array();
  for (const auto& i : iv) a.push_back({i.lo, i.hi});
  return a;
}

Eigen::VectorXd eigen_of(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  return __builtin_bswap64(v);
}

}  // namespace

Isometry isometry_from_json(const json& j, int dim) {
  if (!j.is_object()) throw InputError("isometry: expected an object");
  if (j.contains("linear")) {
    const json& rows = field(j, "linear");
    const auto t = vec_of(field(j, "translation"), "isometry translation");
    if (!rows.is_array() || rows.size() != t.size()) throw InputError("isometry: linear part must be d x d");
    const int d = static_cast<int>(t.size());
    Eigen::MatrixXd Q(d, d);
    for (int r = 0; r < d; ++r) {
      const auto row = vec_of(rows[r], "isometry linear");
      if (static_cast<int>(row.size()) != d) throw InputError("isometry: linear part must be d x d");
      for (int c = 0; c < d; ++c) Q(r, c) = row[c];
    }
    if (dim > 0 && d != dim) throw InputError("isometry: dimension mismatch");
    return Isometry(Q, eigen_of(t));
  }
  if (j.contains("translate")) {
    const auto t = vec_of(field(j, "translate"), "translate");
    if (dim > 0 && static_cast<int>(t.size()) != dim) throw InputError("isometry: dimension mismatch");
    return Isometry::translation(eigen_of(t));
  }
  if (dim > 0 && dim != 2) throw InputError("isometry: rotations and reflections are planar");
  if (j.contains("rotate")) {
    const Vec2 c = j.contains("center") ? vec2_of(j["center"], "center") : Vec2{};
    return Isometry::rotation(num(j["rotate"], "rotate"), c);
  }
  if (j.contains("reflect")) {
    const Vec2 p = j.contains("point") ? vec2_of(j["point"], "point") : Vec2{};
    return Isometry::reflection(num(j["reflect"], "reflect"), p);
  }
  throw InputError("isometry: need linear+translation, translate, rotate or reflect");
}

json isometry_to_json(const Isometry& iso) {
  json rows = json::array();
  for (int r = 0; r < iso.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < iso.dim(); ++c) row.push_back(iso.linear()(r, c));
    rows.push_back(row);
  }
  json t = json::array();
  for (int r = 0; r < iso.dim(); ++r) t.push_back(iso.translation()(r));
  return json{{"linear", rows}, {"translation", t}};
}

Domain domain_from_json(const json& j) {
  const json& ty = field(j, "type");
  if (!ty.is_string()) throw InputError("domain: \"type\" must be a string");
  const std::string type = ty.get<std::string>();
  if (type == "interval_union") return Domain::interval_union(pairs_of(field(j, "intervals"), "intervals"));
  if (type == "box") return Domain::box(pairs_of(field(j, "sides"), "sides"));
  if (type == "polygon") {
    const json& vs = field(j, "vertices");
    if (!vs.is_array()) throw InputError("polygon: vertices must be an array");
    std::vector<Vec2> v;
    for (const auto& p : vs) v.push_back(vec2_of(p, "vertex"));
    return Domain::polygon(std::move(v));
  }
  if (type == "copy") {
    const Domain base = domain_from_json(field(j, "base"));
    return Domain::copy(isometry_from_json(field(j, "isometry"), base.dim()), base);
  }
  if (type == "union") {
    const json& ms = field(j, "members");
    if (!ms.is_array()) throw InputError("union: members must be an array");
    std::vector<Domain> members;
    for (const auto& m : ms) members.push_back(domain_from_json(m));
    return Domain::disjoint_union(std::move(members));
  }
  if (type == "product") {
    const json& fs = field(j, "factors");
    if (!fs.is_array() || fs.size() < 2) throw InputError("product: need at least two factors");
    Domain d = domain_from_json(fs[0]);
    for (std::size_t i = 1; i < fs.size(); ++i) d = Domain::product(d, domain_from_json(fs[i]));
    return d;
  }
  throw InputError("domain: unknown type \"" + type + "\"");
}

json domain_to_json(const Domain& d) {
  json j;
  if (const auto* u = d.as<geometry::IntervalUnion>()) {
    j["type"] = "interval_union";
    j["intervals"] = pairs_json(u->intervals);
  } else if (const auto* b = d.as<geometry::Box>()) {
    j["type"] = "box";
    j["sides"] = pairs_json(b->sides);
  } else if (const auto* p = d.as<geometry::Polygon>()) {
    j["type"] = "polygon";
    json vs = json::array();
    for (const auto& v : p->vertices) vs.push_back({v.x, v.y});
    j["vertices"] = vs;
  } else if (const auto* c = d.as<geometry::CopyOf>()) {
    j["type"] = "copy";
    j["isometry"] = isometry_to_json(c->iso);
    j["base"] = domain_to_json(*c->base);
  } else if (const auto* m = d.as<geometry::DisjointUnion>()) {
    j["type"] = "union";
    json ms = json::array();
    for (const auto& x : m->members) ms.push_back(domain_to_json(x));
    j["members"] = ms;
  } else if (const auto* pr = d.as<geometry::Product>()) {
    j["type"] = "product";
    j["factors"] = json::array({domain_to_json(*pr->first), domain_to_json(*pr->second)});
  }
  return j;
}

tiling::Tiling tiling_from_json(const json& j) {
  if (j.contains("type") && j["type"] != "tiling") throw InputError("tiling: \"type\" must be \"tiling\"");
  tiling::Tiling t{std::nullopt, 1.0, domain_from_json(field(j, "prototile")), {}, std::nullopt,
                   tiling::Kind::general, {}, geometry::Box{}};
  const int d = t.prototile.dim();
  if (j.contains("shape") && !j["shape"].is_null()) t.shape = tiling::parse_shape(j["shape"].get<std::string>());
  if (j.contains("scale")) t.scale = num(j["scale"], "scale");
  if (j.contains("kind")) t.kind = tiling::parse_kind(j["kind"].get<std::string>());
  if (j.contains("window")) {
    t.window.sides = pairs_of(j["window"], "window");
  } else {
    t.window = geometry::bounding_box(t.prototile);
  }
  const json& isos = field(j, "isometries");
  if (!isos.is_array() || isos.empty()) throw InputError("tiling: isometries must be a non-empty array");
  for (const auto& x : isos) t.placements.push_back(isometry_from_json(x, d));
  if (j.contains("lattice") && !j["lattice"].is_null()) {
    std::vector<Eigen::VectorXd> basis;
    for (const auto& b : j["lattice"]) basis.push_back(eigen_of(vec_of(b, "lattice vector")));
    t.lattice = tiling::Lattice(std::move(basis));
  }
  if (j.contains("motif"))
    for (const auto& x : j["motif"]) t.motif.push_back(isometry_from_json(x, d));
  return t;
}

json tiling_to_json(const tiling::Tiling& t) {
  json j;
  j["type"] = "tiling";
  j["shape"] = t.shape ? json(tiling::shape_name(*t.shape)) : json(nullptr);
  j["scale"] = t.scale;
  j["kind"] = tiling::kind_name(t.kind);
  j["window"] = pairs_json(t.window.sides);
  j["prototile"] = domain_to_json(t.prototile);
  json isos = json::array();
  for (const auto& p : t.placements) isos.push_back(isometry_to_json(p));
  j["isometries"] = isos;
  if (t.lattice) {
    json b = json::array();
    for (const auto& v : t.lattice->basis()) b.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    j["lattice"] = b;
  } else {
    j["lattice"] = nullptr;
  }
  json m = json::array();
  for (const auto& x : t.motif) m.push_back(isometry_to_json(x));
  j["motif"] = m;
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

geometry::Domain load_domain(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  try {
    return domain_from_json(j);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

tiling::Tiling load_tiling(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  try {
    return tiling_from_json(j);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_atomic(const std::filesystem::path& path, const std::string& bytes) {
  const std::filesystem::path dir = path.has_parent_path() ? path.parent_path() : ".";
  std::filesystem::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw InputError("write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot replace " + path.string() + ": " + ec.message());
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

json mask_rle(const std::vector<std::uint8_t>& mask) {
  json runs = json::array();
  std::size_t i = 0;
  while (i < mask.size()) {
    std::size_t k = i;
    const int v = mask[i] ? 1 : 0;
    while (k < mask.size() && (mask[k] ? 1 : 0) == v) ++k;
    runs.push_back({v, k - i});
    i = k;
  }
  return runs;
}

std::vector<std::uint8_t> mask_from_rle(const json& runs, std::size_t size) {
  if (!runs.is_array()) throw InputError("mask: expected an array of [value, length] runs");
  std::vector<std::uint8_t> m;
  m.reserve(size);
  for (const auto& r : runs) {
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer())
      throw InputError("mask: malformed run");
    const auto v = r[0].get<long long>(), n = r[1].get<long long>();
    if ((v != 0 && v != 1) || n <= 0 || m.size() + static_cast<std::size_t>(n) > size)
      throw InputError("mask: malformed run");
    m.insert(m.end(), static_cast<std::size_t>(n), static_cast<std::uint8_t>(v));
  }
  if (m.size() != size) throw InputError("mask: runs do not cover the grid");
  return m;
}

void write_field(const std::filesystem::path& base, const extension::GridField& f) {
  f.validate();
  std::string bin(f.size() * 8, '\0');
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::uint64_t b = to_le(std::bit_cast<std::uint64_t>(f.values[i]));
    std::memcpy(bin.data() + 8 * i, &b, 8);
  }
  std::filesystem::path bin_path = base;
  bin_path += ".bin";
  std::filesystem::path hdr_path = base;
  hdr_path += ".json";
  json h;
  h["format"] = "grid-field";
  h["dtype"] = "float64-le";
  h["order"] = "x fastest";
  h["dim"] = f.dim;
  h["spacing"] = f.h;
  h["half_cells"] = f.half_cells;
  h["extent"] = {-f.half_width(), f.half_width()};
  h["nodes_per_axis"] = f.nodes_per_axis();
  h["data"] = bin_path.filename().string();
  h["mask_rle"] = mask_rle(f.mask);
  write_atomic(bin_path, bin);
  write_atomic(hdr_path, h.dump(2) + "\n");
}

extension::GridField read_field(const std::filesystem::path& base) {
  std::filesystem::path hdr_path = base;
  hdr_path += ".json";
  const json h = read_json_file(hdr_path);
  extension::GridField f;
  try {
    if (h.value("dtype", "") != "float64-le") throw InputError("unsupported dtype");
    f.dim = h.at("dim").get<int>();
    f.h = num(h.at("spacing"), "spacing");
    f.half_cells = h.at("half_cells").get<int>();
    if (f.dim != 1 && f.dim != 2) throw InputError("dim must be 1 or 2");
    if (f.half_cells < 1 || !(f.h > 0)) throw InputError("bad spacing or extent");
    f.mask = mask_from_rle(h.at("mask_rle"), f.size());
  } catch (const json::exception& e) {
    throw InputError(hdr_path.string() + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(hdr_path.string() + ": " + e.what());
  }
  const std::filesystem::path bin_path = base.parent_path() / h.at("data").get<std::string>();
  std::ifstream in(bin_path, std::ios::binary);
  if (!in) throw InputError("cannot open " + bin_path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bin = ss.str();
  if (bin.size() != 8 * f.size()) throw InputError(bin_path.string() + ": size does not match header");
  f.values.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::uint64_t b;
    std::memcpy(&b, bin.data() + 8 * i, 8);
    f.values[i] = std::bit_cast<double>(to_le(b));
  }
  return f;
}

}  // namespace polya::io
