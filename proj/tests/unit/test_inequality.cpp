#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "polya/error.hpp"
#include "polya/fem.hpp"
#include "polya/inequality.hpp"
#include "polya/tiling.hpp"

using namespace polya::inequality;
using polya::geometry::Domain;
using polya::spectra::box_spectrum;
using polya::spectra::exact_spectrum;
using std::numbers::pi;

namespace {

Spectrum unit_square(Bc bc, double lmax) { return *exact_spectrum(Domain::box({{0, 1}, {0, 1}}), bc, lmax); }

Spectrum cube(int d, Bc bc, double lmax) {
  const std::vector<double> half(d, 1.0);
  return box_spectrum(half, bc, lmax);
}

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(a + (b - a) * i / (n - 1));
  return g;
}

}  // namespace

TEST_SUITE("inequality") {

TEST_CASE("counting function conventions") {
  const Spectrum s = cube(2, Bc::neumann, 20);
  CHECK(counting_function(s, 10).count == 6u);
  CHECK(counting_function(s, 10).count == polya::spectra::count_box_neumann(10, 1, 2));
  const Spectrum iv = *exact_spectrum(Domain::interval(-1, 1), Bc::neumann, 50);
  CHECK(counting_function(iv, pi * pi / 4).count == 1u);
  CHECK(counting_function(iv, 0).count == 0u);
  CHECK_THROWS_AS(counting_function(iv, -1), polya::InputError);
}

TEST_CASE("counting function is nondecreasing (property)") {
  const Spectrum s = cube(3, Bc::neumann, 200);
  std::size_t prev = 0;
  for (double l : grid(0, 200, 2000)) {
    const auto c = counting_function(s, l).count;
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("fem bracket contains the raw count") {
  const Spectrum f = polya::fem::fem_spectrum_estimated(Domain::box({{0, 1}, {0, 1}}), Bc::neumann, 3, 120);
  for (double l : grid(1, 100, 50)) {
    const auto c = counting_function(f, l);
    CHECK(c.count <= c.upper);
  }
}

TEST_CASE("polya spot values on the unit square") {
  const auto n10 = check_polya(unit_square(Bc::neumann, 200), Side::neumann_lower, {10});
  CHECK(n10.pass);
  CHECK(n10.records[0].lhs == 3);
  CHECK(n10.records[0].rhs == doctest::Approx(10 / (4 * pi)));
  const auto d50 = check_polya(unit_square(Bc::dirichlet, 200), Side::dirichlet_upper, {50});
  CHECK(d50.pass);
  CHECK(d50.records[0].lhs == 3);
  CHECK(d50.records[0].rhs == doctest::Approx(50 / (4 * pi)));
  const auto n100 = check_polya(unit_square(Bc::neumann, 200), Side::neumann_lower, {100});
  CHECK(n100.records[0].lhs == 13);
  CHECK(n100.records[0].rhs == doctest::Approx(7.9577).epsilon(1e-4));
  CHECK_THROWS_AS(check_polya(unit_square(Bc::neumann, 200), Side::dirichlet_upper, {10}), polya::InputError);
  // Counting beyond the computed range is refused.
  CHECK_THROWS_AS(check_polya(unit_square(Bc::neumann, 50), Side::neumann_lower, {60}), polya::InputError);
}

TEST_CASE("polya holds on exact boxes and intervals (property)") {
  const auto lam = grid(1e-3, 1e4, 10000);
  for (int d = 1; d <= 3; ++d) {
    const double lmax = d == 3 ? 2000 : 1e4;  // keep the 3D enumeration moderate
    std::vector<double> g;
    for (double l : lam)
      if (l <= lmax) g.push_back(l);
    CHECK(check_polya(cube(d, Bc::neumann, lmax), Side::neumann_lower, g).pass);
    CHECK(check_polya(cube(d, Bc::dirichlet, lmax), Side::dirichlet_upper, g).pass);
  }
  const Domain iv = Domain::interval(0, 3.7);
  CHECK(check_polya(*exact_spectrum(iv, Bc::neumann, 1e4), Side::neumann_lower, lam).pass);
  CHECK(check_polya(*exact_spectrum(iv, Bc::dirichlet, 1e4), Side::dirichlet_upper, lam).pass);
}

TEST_CASE("li-yau and kroger") {
  CHECK(li_yau_constant(2) == doctest::Approx(2.0));
  CHECK(kroger_constant(2) == doctest::Approx(0.5));
  const auto ly = check_li_yau_kroger(unit_square(Bc::dirichlet, 200), {50});
  CHECK(ly.tag == "li-yau");
  CHECK(ly.records[0].rhs == doctest::Approx(2 * 50 / (4 * pi)));
  CHECK(ly.pass);
  const auto kr = check_li_yau_kroger(unit_square(Bc::neumann, 200), {100});
  CHECK(kr.tag == "kroger");
  CHECK(kr.records[0].rhs == doctest::Approx(0.5 * 100 / (4 * pi)));
  CHECK(kr.pass);
}

TEST_CASE("li-yau margins dominate polya margins (property)") {
  const auto g = grid(1, 2000, 400);
  const Spectrum s = unit_square(Bc::dirichlet, 2000);
  const auto p = check_polya(s, Side::dirichlet_upper, g);
  const auto l = check_li_yau_kroger(s, g);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(p.records[i].margin <= l.records[i].margin);
  // Pólya passing implies Li-Yau passing.
  for (std::size_t i = 0; i < g.size(); ++i)
    if (p.records[i].pass) CHECK(l.records[i].pass);
}

TEST_CASE("friedlander on exact spectra") {
  const auto sq = check_friedlander(unit_square(Bc::dirichlet, 2000), unit_square(Bc::neumann, 2000), 20);
  CHECK(sq.pass);
  CHECK(sq.relation == "<");
  CHECK(sq.records[0].lhs == doctest::Approx(pi * pi));
  CHECK(sq.records[0].rhs == doctest::Approx(2 * pi * pi));
  CHECK(sq.equality_cases == 0u);
  const Domain iv = Domain::interval(0, 1);
  const auto one = check_friedlander(*exact_spectrum(iv, Bc::dirichlet, 5000), *exact_spectrum(iv, Bc::neumann, 5000), 20);
  CHECK(one.pass);
  CHECK(one.equality_cases == 20u);
  for (const auto& r : one.records) CHECK(std::abs(r.lhs - r.rhs) <= 1e-12 * r.rhs);
  CHECK_THROWS_AS(check_friedlander(unit_square(Bc::dirichlet, 30), unit_square(Bc::neumann, 30), 20),
                  polya::InputError);
}

TEST_CASE("friedlander on the L-shape via fem") {
  const Domain l = Domain::polygon({{-1, -1}, {0, -1}, {0, 0}, {1, 0}, {1, 1}, {-1, 1}});
  const auto dir = polya::fem::fem_spectrum_estimated(l, Bc::dirichlet, 4, 120);
  const auto neu = polya::fem::fem_spectrum_below(l, Bc::neumann, 4, 120);
  REQUIRE(dir.values.size() >= 10u);
  const auto r = check_friedlander(dir, neu, 10);
  CHECK(r.pass);
  CHECK(r.any_caveat);
}

TEST_CASE("faber-krahn") {
  const auto sq = check_faber_krahn(unit_square(Bc::dirichlet, 30), 1.0);
  CHECK(sq.pass);
  CHECK(sq.records[0].rhs == doctest::Approx(18.168).epsilon(1e-4));
  const auto rect = exact_spectrum(Domain::box({{0, 2}, {0, 0.5}}), Bc::dirichlet, 50);
  CHECK(rect->values[0] == doctest::Approx(4.25 * pi * pi));
  CHECK(check_faber_krahn(*rect, 1.0).pass);
  // The disk against itself.
  Spectrum disk;
  disk.bc = Bc::dirichlet;
  disk.dim = 2;
  disk.values = {polya::spectra::ball_dirichlet_lambda1(1.0)};
  disk.errors = {0.0};
  const auto eq = check_faber_krahn(disk, pi);
  CHECK(eq.pass);
  CHECK(eq.equality_cases == 1u);
}

TEST_CASE("weyl ratio") {
  const Spectrum s = cube(2, Bc::neumann, 1e4);
  const auto t = check_weyl_ratio(s, {1e2, 1e3, 1e4});
  CHECK(t.pass);
  CHECK(t.deviation_decreasing);
  CHECK(t.rows.back().ratio >= 1.0);
  CHECK(t.rows.back().ratio <= 1.05);
  const Spectrum iv = *exact_spectrum(Domain::interval(-1, 1), Bc::neumann, 1e6);
  const auto u = check_weyl_ratio(iv, {1e6}, 0.997, 1.003);
  CHECK(u.pass);
  CHECK_THROWS_AS(check_weyl_ratio(s, {2e4}), polya::InputError);
}

TEST_CASE("coarse fem never reports a false polya violation") {
  // The hexagon tiles, so every Neumann failure here is a resolution artifact.
  const Domain hex = polya::tiling::generate_tiling(polya::tiling::Shape::hexagon, 1.0,
                                                    polya::geometry::Box{{{-1, 1}, {-1, 1}}})
                         .prototile;
  for (double lam : {150.0, 300.0, 600.0}) {
    CAPTURE(lam);
    const auto s = polya::fem::fem_spectrum_covering(hex, Bc::neumann, 4, lam);
    const auto r = check_polya(s, Side::neumann_lower, {lam});
    CHECK(r.violations == 0u);
    CHECK(r.pass + r.inconclusive == 1u);
    // Raw counts fall short somewhere along the way.
    if (lam == 600.0) CHECK(r.records[0].lhs < r.records[0].rhs);
  }
}

TEST_CASE("widened counts report when they are open") {
  const Domain l = Domain::polygon({{-1, -1}, {0, -1}, {0, 0}, {1, 0}, {1, 1}, {-1, 1}});
  const auto cut = polya::fem::fem_spectrum_estimated(l, Bc::neumann, 3, 30.0);
  // Cutoff at lambda: the last widened value cannot clear it.
  const auto b = counting_function(cut, 30.0);
  CHECK(b.upper_open);
  CHECK(b.upper >= b.count);
  const auto cov = polya::fem::fem_spectrum_covering(l, Bc::neumann, 4, 30.0);
  CHECK_FALSE(counting_function(cov, 30.0).upper_open);
  CHECK(cov.values.back() - cov.errors.back() >= 30.0);
  // Exact and unwidened spectra never are.
  CHECK_FALSE(counting_function(unit_square(Bc::neumann, 50), 40).upper_open);
  CHECK_FALSE(counting_function(polya::fem::fem_spectrum_below(l, Bc::neumann, 3, 30.0), 29).upper_open);
  // An open Dirichlet upper check cannot pass.
  const auto d = polya::fem::fem_spectrum_estimated(l, Bc::dirichlet, 3, 60.0);
  const auto r = check_polya(d, Side::dirichlet_upper, {59.0});
  CHECK_FALSE(r.pass);
  CHECK(r.violations == 0u);
}

TEST_CASE("unresolved modes carry the whole level jump") {
  const Domain sq = Domain::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto est = polya::fem::fem_spectrum_estimated(sq, Bc::dirichlet, 4, 300.0);
  const auto fine = polya::fem::fem_spectrum_below(sq, Bc::dirichlet, 4, 300.0);
  const auto coarse = polya::fem::fem_spectrum_below(sq, Bc::dirichlet, 3, 3000.0);
  REQUIRE(est.size() == fine.size());
  int resolved = 0, unresolved = 0;
  for (std::size_t i = 0; i < est.size() && i < coarse.size(); ++i) {
    const double jump = coarse.values[i] - fine.values[i];
    CAPTURE(i);
    if (jump <= 0.1 * fine.values[i]) {
      ++resolved;
      CHECK(est.errors[i] == doctest::Approx(std::max(jump / 3, fine.errors[i])));
    } else {
      ++unresolved;
      CHECK(est.errors[i] == doctest::Approx(std::max(jump, fine.errors[i])));
    }
  }
  CHECK(resolved > 0);
  CHECK(unresolved > 0);
}

}
