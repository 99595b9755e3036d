#include <cmath>
#include <numbers>

#include "doctest.h"
#include "polya/error.hpp"
#include "polya/prover.hpp"

using namespace polya::prover;
using polya::spectra::Bc;
using polya::spectra::exact_spectrum;
using polya::tiling::Shape;
using std::numbers::pi;

namespace {

Piece neumann_piece(const Domain& d, double lmax) { return {d, *exact_spectrum(d, Bc::neumann, lmax)}; }

// Direct count of (m, n) >= 0 with pi^2 (m^2 + n^2) / s^2 < lambda for a square of side s.
std::size_t square_count(double lambda, double s) {
  std::size_t c = 0;
  for (int m = 0; m < 200; ++m)
    for (int n = 0; n < 200; ++n)
      if (pi * pi * (m * m + n * n) / (s * s) < lambda) ++c;
  return c;
}

}  // namespace

TEST_SUITE("prover") {

TEST_CASE("bracketing examples") {
  const Domain whole = Domain::box({{-1, 1}, {-1, 1}});
  std::vector<Piece> quarters;
  for (double x : {-1.0, 0.0})
    for (double y : {-1.0, 0.0}) quarters.push_back(neumann_piece(Domain::box({{x, x + 1}, {y, y + 1}}), 50));
  const auto r = check_bracketing(neumann_piece(whole, 50), quarters, {10});
  CHECK(r.pass);
  CHECK(r.records[0].lhs == 6);
  CHECK(r.records[0].rhs == 12);
  const auto iv = check_bracketing(neumann_piece(Domain::interval(0, 2), 50),
                                   {neumann_piece(Domain::interval(0, 1), 50), neumann_piece(Domain::interval(1, 2), 50)},
                                   {10});
  CHECK(iv.records[0].lhs == 3);
  CHECK(iv.records[0].rhs == 4);
  CHECK_THROWS_AS(check_bracketing(neumann_piece(whole, 50), {quarters[0]}, {10}), polya::InputError);
}

TEST_CASE("bracketing holds on a grid (property)") {
  const Domain whole = Domain::box({{0, 3}, {0, 2}});
  std::vector<Piece> parts{neumann_piece(Domain::box({{0, 1}, {0, 2}}), 500),
                           neumann_piece(Domain::box({{1, 3}, {0, 2}}), 500)};
  std::vector<double> g;
  for (int i = 1; i <= 400; ++i) g.push_back(i * 1.2);
  CHECK(check_bracketing(neumann_piece(whole, 500), parts, g).pass);
}

TEST_CASE("defect") {
  const double R = std::sqrt(2.0);
  CHECK(defect(1024, R, 2) == doctest::Approx(0.00828).epsilon(1e-3));
  const double L = 8;
  CHECK(defect(L, R, 2) == doctest::Approx((std::pow(L + R, 2) - std::pow(L - 2 * R, 2)) / (L * L)));
  CHECK(defect(10, 1, 1) == doctest::Approx(0.3));
  CHECK_THROWS_AS(defect(2, 1, 2), polya::InputError);
  // Decreasing in L (property).
  double prev = defect(3, 1, 2);
  for (double l = 3.5; l < 2000; l *= 1.3) {
    const double d = defect(l, 1, 2);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("lower bound on the unit square") {
  const double R = std::sqrt(2.0);
  CHECK(square_count(100, 1) == 13u);
  CHECK(square_count(404, 1) == 39u);
  const auto b = proof_lower_bound(100, 1, R, 2, 13, 39, 1024);
  CHECK(b.weyl == doctest::Approx(100 / (4 * pi)));
  CHECK(b.bound == doctest::Approx(7.635).epsilon(1e-3));
  CHECK(b.holds);
  const auto b32 = proof_lower_bound(100, 1, R, 2, 13, 39, 32);
  CHECK(b32.bound == doctest::Approx(100 / (4 * pi) - defect(32, R, 2) * 39));
  CHECK(b32.bound < b.bound);
}

TEST_CASE("proof report for the square tiling") {
  const ProofReport r = proof_report(Shape::square, 100, {1024, 8, 32});
  REQUIRE(r.rows.size() == 3u);
  CHECK(r.rows[0].L == 8);
  CHECK(r.rows[2].L == 1024);
  CHECK(r.n_self == 13u);
  CHECK(r.n_inflated == 39u);
  CHECK(r.count_provenance.tag() == "exact");
  CHECK_FALSE(r.fem_caveat);
  CHECK(r.monotone);
  CHECK(r.final_holds);
  CHECK(r.rows[2].lower_bound == doctest::Approx(7.635).epsilon(1e-3));
  CHECK(r.rows[2].lower_bound >= 0.95 * r.rows[2].weyl);
  CHECK(r.rows[0].index_bounds.has_value());
  CHECK_FALSE(r.rows[2].index_bounds.has_value());
  CHECK(r.index_bounds_ok);
  CHECK(r.cube_checks_ok);
  CHECK(r.pass);
  CHECK_THROWS_AS(proof_report(Shape::square, 100, {2}), polya::InputError);
}

TEST_CASE("cube term is dominated by the copy sum") {
  for (double lambda : {10.0, 100.0}) {
    const ProofReport r = proof_report(Shape::square, lambda, {8, 16, 32});
    for (const auto& row : r.rows) {
      REQUIRE(row.cube_term.has_value());
      CHECK(*row.cube_term <= *row.copy_sum);
      CHECK(*row.cube_term == doctest::Approx(pi * row.L * row.L * lambda / (pi * pi)));
    }
    CHECK(r.cube_checks_ok);
  }
}

TEST_CASE("proof report near lambda = 0") {
  const ProofReport r = proof_report(Shape::square, 1e-6, {8, 32, 1024});
  CHECK(r.n_self == 1u);
  CHECK(r.pass);
}

TEST_CASE("proof report on a fem prototile") {
  const ProofReport r = proof_report(Shape::equilateral_triangle, 20, {8, 32, 1024});
  CHECK(r.fem_caveat);
  CHECK(r.count_provenance.kind == polya::Provenance::Kind::fem);
  // Neumann spectrum of the unit equilateral triangle: 0, then 16 pi^2 / 9 twice.
  CHECK(r.n_self == 3u);
  CHECK(r.monotone);
  CHECK(r.pass);
}

}
