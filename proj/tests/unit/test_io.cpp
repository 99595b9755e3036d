#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <unistd.h>

#include "doctest.h"
#include "polya/error.hpp"
#include "polya/io.hpp"
#include "polya/report.hpp"

using namespace polya;
using io::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("polya-io-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("domain json round trip") {
  const std::vector<std::string> texts = {
      R"({"type":"box","sides":[[-1,1],[0,2],[0,0.5]]})",
      R"({"type":"polygon","vertices":[[0,0],[2,0],[2,1],[1,1],[1,2],[0,2]]})",
      R"({"type":"interval_union","intervals":[[0,1],[2,3.5]]})",
      R"({"type":"copy","isometry":{"rotate":0.5,"center":[1,1]},"base":{"type":"box","sides":[[0,1],[0,2]]}})",
      R"({"type":"copy","isometry":{"translate":[3]},"base":{"type":"interval_union","intervals":[[0,1]]}})",
      R"({"type":"union","members":[{"type":"box","sides":[[0,1],[0,1]]},{"type":"box","sides":[[2,3],[0,1]]}]})",
      R"({"type":"product","factors":[{"type":"interval_union","intervals":[[0,1]]},{"type":"interval_union","intervals":[[0,2]]},{"type":"interval_union","intervals":[[0,3]]}]})",
  };
  const std::vector<double> measures = {2.0, 3.0, 2.5, 2.0, 1.0, 2.0, 6.0};
  for (std::size_t i = 0; i < texts.size(); ++i) {
    CAPTURE(texts[i]);
    const auto d = io::domain_from_json(json::parse(texts[i]));
    CHECK(geometry::measure(d) == doctest::Approx(measures[i]));
    const json j = io::domain_to_json(d);
    const auto back = io::domain_from_json(j);
    CHECK(io::domain_to_json(back) == j);
    CHECK(geometry::measure(back) == doctest::Approx(measures[i]));
    CHECK(back.dim() == d.dim());
  }
}

TEST_CASE("malformed domains are input errors") {
  for (const char* t : {R"({"sides":[[0,1]]})", R"({"type":"disk","r":1})", R"({"type":"box","sides":[[0]]})",
                        R"({"type":"polygon","vertices":[[0,0],[1,"x"]]})", R"({"type":"product","factors":[]})",
                        R"({"type":"copy","isometry":{"spin":1},"base":{"type":"box","sides":[[0,1],[0,1]]}})",
                        R"([1,2,3])"}) {
    CAPTURE(t);
    CHECK_THROWS_AS(io::domain_from_json(json::parse(t)), InputError);
  }
  const auto p = scratch("broken.json");
  io::write_atomic(p, "{\"type\": \"box\", ");
  CHECK_THROWS_AS(io::load_domain(p), InputError);
  CHECK_THROWS_AS(io::load_domain(scratch("absent.json")), InputError);
}

TEST_CASE("tiling json round trip") {
  for (auto shape : {tiling::Shape::square, tiling::Shape::hexagon, tiling::Shape::l_tromino}) {
    const auto t = tiling::generate_tiling(shape, 1.0, geometry::Box{{{-3, 3}, {-3, 3}}});
    const json j = io::tiling_to_json(t);
    const auto back = io::tiling_from_json(json::parse(j.dump()));
    CHECK(back.placements.size() == t.placements.size());
    CHECK(back.kind == t.kind);
    CHECK(io::tiling_to_json(back) == j);
    CHECK(tiling::validate_tiling(back, geometry::Box{{{-2, 2}, {-2, 2}}}, 256).pass);
  }
}

TEST_CASE("mask run-length encoding (property)") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint8_t> m(1 + rng() % 500);
    const int p = static_cast<int>(rng() % 10);
    for (auto& x : m) x = (rng() % 10) < static_cast<unsigned>(p) ? 0 : 1;
    const json runs = io::mask_rle(m);
    CHECK(io::mask_from_rle(runs, m.size()) == m);
    // Runs alternate and are nonempty.
    for (std::size_t i = 1; i < runs.size(); ++i) CHECK(runs[i][0] != runs[i - 1][0]);
  }
  CHECK(io::mask_rle({1, 1, 0, 0, 0, 1}).dump() == "[[1,2],[0,3],[1,1]]");
  CHECK_THROWS_AS(io::mask_from_rle(json::parse("[[1,2]]"), 3), InputError);
  CHECK_THROWS_AS(io::mask_from_rle(json::parse("[[2,3]]"), 3), InputError);
  CHECK_THROWS_AS(io::mask_from_rle(json::parse("[[1,4]]"), 3), InputError);
}

TEST_CASE("field files round trip bit for bit") {
  const auto f = extension::random_trig_field(2, 1.0 / 16, 1, 0.25, 5, true);
  const auto base = scratch("field");
  io::write_field(base, f);
  const auto g = io::read_field(base);
  CHECK(g.dim == f.dim);
  CHECK(g.h == f.h);
  CHECK(g.half_cells == f.half_cells);
  CHECK(g.mask == f.mask);
  REQUIRE(g.values.size() == f.values.size());
  CHECK(std::memcmp(g.values.data(), f.values.data(), 8 * f.values.size()) == 0);
  const json h = io::read_json_file(scratch("field.json"));
  CHECK(h["spacing"] == 0.0625);
  CHECK(h["extent"] == json::parse("[-1.0, 1.0]"));
  CHECK(std::filesystem::file_size(scratch("field.bin")) == 8 * f.size());
  // Truncated data is rejected.
  io::write_atomic(scratch("field.bin"), std::string(16, '\0'));
  CHECK_THROWS_AS(io::read_field(base), InputError);
}

TEST_CASE("atomic write replaces and leaves no temporaries") {
  const auto p = scratch("atomic.txt");
  io::write_atomic(p, "first");
  io::write_atomic(p, "second");
  CHECK(slurp(p) == "second");
  for (const auto& e : std::filesystem::directory_iterator(p.parent_path()))
    CHECK(e.path().filename().string().find(".tmp") == std::string::npos);
  CHECK_THROWS_AS(io::write_atomic(scratch("no/such/dir/x.txt"), "x"), InputError);
}

TEST_CASE("number text reads back exactly (property)") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const double v = std::ldexp(static_cast<double>(rng() >> 11), static_cast<int>(rng() % 200) - 150);
    const std::string s = io::format_number(v);
    double back = 0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
  CHECK(io::format_number(0.5) == "0.5");
  CHECK(io::format_number(100) == "100");
  CHECK(io::format_number(std::nan("")) == "nan");
}

TEST_CASE("report tags and csv layouts") {
  CHECK(Provenance::fem(5, 1.5e-9).tag() == "fem(5, 1.500000e-09)");
  CHECK(report::tagged(2.0, Provenance::exact()).dump() == R"({"value":2.0,"provenance":"exact"})");
  CHECK(report::derived(Provenance::exact(), Provenance::arithmetic()).tag() == "arithmetic");
  CHECK(report::derived(Provenance::fem(3, 0.1), Provenance::fem(4, 0.05)).tag() == "fem(4, 1.000000e-01)");
  const auto s = *spectra::exact_spectrum(geometry::Domain::interval(0, 1), spectra::Bc::neumann, 40);
  CHECK(report::spectrum_csv(s).rfind("index,eigenvalue,error_bound\n1,0,0\n", 0) == 0);
  const auto pr = prover::proof_report(tiling::Shape::square, 100, {8, 32, 1024});
  const std::string csv = report::proof_csv(pr);
  CHECK(csv.rfind("L,defect,lower_bound,weyl_term,N_self\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  fem::ConvergenceTable t{{2, 3}, {0.5, 0.25}, {{1, 2}, {0.5, 1.5}}, {NAN, NAN}, {0, 0}};
  CHECK(report::convergence_csv(t) == "level,h,eig_1,eig_2\n2,0.5,1,2\n3,0.25,0.5,1.5\n");
  // Every number in a report sits in a tagged object or in plain config.
  const json j = report::inequality_json(
      inequality::check_polya(s, inequality::Side::neumann_lower, {1, 10, 30}));
  for (const auto& r : j["records"])
    for (const auto& [k, v] : r.items())
      if (!v.is_boolean()) CHECK(v.contains("provenance"));
}

}
