#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "polya/error.hpp"
#include "polya/fem.hpp"

using namespace polya::fem;
using polya::geometry::Domain;
using std::numbers::pi;

namespace {

const std::vector<Vec2> kUnitSquare = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
const std::vector<Vec2> kLShape = {{-1, -1}, {0, -1}, {0, 0}, {1, 0}, {1, 1}, {-1, 1}};

// Dense generalized eigenvalues as an oracle for small pencils.
std::vector<double> dense_eigs(const AssembledPencil& p) {
  const int n = p.dofs();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n), M = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = p.stiffness.row_ptr[i]; k < p.stiffness.row_ptr[i + 1]; ++k) {
      K(i, p.stiffness.cols[k]) = p.stiffness.vals[k];
      M(i, p.mass.cols[k]) = p.mass.vals[k];
    }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K, M);
  return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

}  // namespace

TEST_SUITE("fem") {

TEST_CASE("mesh sizes and Euler relation") {
  const Mesh m0 = triangulate(kUnitSquare, 0);
  CHECK(m0.triangles.size() == 2u);
  CHECK(m0.nodes.size() == 4u);
  const Mesh m1 = triangulate(kUnitSquare, 1);
  CHECK(m1.triangles.size() == 8u);
  CHECK(m1.nodes.size() == 9u);
  for (int r = 0; r <= 4; ++r) {
    for (const auto& poly : {kUnitSquare, kLShape}) {
      const Mesh m = triangulate(poly, r);
      const long V = static_cast<long>(m.nodes.size()), E = static_cast<long>(m.edge_count()),
                 F = static_cast<long>(m.triangles.size());
      CHECK(V - E + F == 1);
    }
  }
  CHECK_THROWS_AS(triangulate({{0, 0}, {1, 1}, {1, 0}, {0, 1}}, 0), polya::InputError);
}

TEST_CASE("mesh covers the polygon with positively oriented triangles") {
  const Mesh m = triangulate(kLShape, 3);
  double area = 0;
  for (const auto& t : m.triangles) {
    const Vec2 a = m.nodes[t[0]], b = m.nodes[t[1]], c = m.nodes[t[2]];
    const double a2 = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    CHECK(a2 > 0);
    area += a2 / 2;
  }
  CHECK(area == doctest::Approx(3.0));
  // Each of the 6 outline edges splits into 8 boundary segments.
  CHECK(m.boundary_nodes.size() == 48u);
}

TEST_CASE("element matrices") {
  const Element k = element_stiffness({0, 0}, {1, 0}, {0, 1});
  const double want[3][3] = {{1, -0.5, -0.5}, {-0.5, 0.5, 0}, {-0.5, 0, 0.5}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(k[i][j] == doctest::Approx(want[i][j]));
  const Element m = element_mass({0.2, 0.1}, {1.3, 0.4}, {0.5, 1.7});
  const double area = 0.5 * ((1.3 - 0.2) * (1.7 - 0.1) - (0.4 - 0.1) * (0.5 - 0.2));
  for (int i = 0; i < 3; ++i) CHECK(m[i][0] + m[i][1] + m[i][2] == doctest::Approx(area / 3));
  CHECK_THROWS_AS(element_stiffness({0, 0}, {1, 0}, {2, 0}), polya::InputError);
}

TEST_CASE("assembled stiffness annihilates constants") {
  const AssembledPencil p = assemble(triangulate(kLShape, 2));
  std::vector<double> one(p.dofs(), 1.0), y(p.dofs());
  p.stiffness.multiply(one.data(), y.data());
  for (double v : y) CHECK(std::abs(v) < 1e-12);
  p.mass.multiply(one.data(), y.data());
  double total = 0;
  for (double v : y) total += v;
  CHECK(total == doctest::Approx(3.0));
  CHECK(p.stiffness.row_ptr == p.mass.row_ptr);
  CHECK(p.stiffness.cols == p.mass.cols);
}

TEST_CASE("mass lower bound is a true lower bound") {
  const AssembledPencil p = assemble(triangulate(kLShape, 1));
  const int n = p.dofs();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = p.mass.row_ptr[i]; k < p.mass.row_ptr[i + 1]; ++k) M(i, p.mass.cols[k]) = p.mass.vals[k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  CHECK(es.eigenvalues()[0] >= p.mass_lower_bound);
}

TEST_CASE("krylov solver matches dense eigenvalues") {
  for (bool dir : {false, true}) {
    AssembledPencil p = assemble(triangulate(kLShape, 2));
    if (dir) p = restrict_dirichlet(p);
    const auto want = dense_eigs(p);
    const int m = std::min(12, p.dofs());
    const EigenSolution s = solve_pencil(p, m, 1e-9);
    REQUIRE(s.values.size() == static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      CHECK(s.values[i] == doctest::Approx(want[i]).epsilon(1e-9));
      CHECK(s.residuals[i] <= 1e-9);
    }
    // Inertia gives the same counts.
    for (double lam : {5.0, 20.0, 50.0, 120.0}) {
      const auto n = static_cast<std::size_t>(std::lower_bound(want.begin(), want.end(), lam) - want.begin());
      CHECK(count_below_inertia(p, lam) == n);
    }
  }
}

TEST_CASE("solver edge cases") {
  const AssembledPencil p = restrict_dirichlet(assemble(triangulate(kUnitSquare, 1)));
  CHECK(p.dofs() == 1);
  const auto s = solve_pencil(p, 1);
  CHECK(s.values.size() == 1u);
  CHECK_THROWS_AS(solve_pencil(p, 2), polya::InputError);
  CHECK_THROWS_AS(restrict_dirichlet(assemble(triangulate(kUnitSquare, 0))), polya::InputError);
  // Full-space basis on a tiny Neumann pencil.
  const AssembledPencil q = assemble(triangulate(kUnitSquare, 1));
  const auto all = solve_pencil(q, q.dofs());
  const auto want = dense_eigs(q);
  for (int i = 0; i < q.dofs(); ++i) CHECK(all.values[i] == doctest::Approx(want[i]).epsilon(1e-9));
}

TEST_CASE("unit square eigenvalues at refinement 5") {
  const AssembledPencil p = assemble(triangulate(kUnitSquare, 5));
  const Spectrum d = solve_smallest(p, Bc::dirichlet, 1, kDefaultTol, 5);
  CHECK(d.values[0] >= 2 * pi * pi);
  CHECK(d.values[0] <= 2 * pi * pi * 1.01);
  const Spectrum n = solve_smallest(p, Bc::neumann, 2, kDefaultTol, 5);
  CHECK(std::abs(n.values[0]) < 1e-8);
  CHECK(n.values[1] >= pi * pi);
  CHECK(n.values[1] <= pi * pi * 1.01);
  CHECK(n.domain_measure == doctest::Approx(1.0));
  CHECK(n.method == polya::spectra::Method::fem);
}

TEST_CASE("one-dimensional fallback") {
  const AssembledPencil p = assemble_interval(1.0, 64);
  const Spectrum d = solve_smallest(p, Bc::dirichlet, 3);
  CHECK(std::abs(d.values[0] - pi * pi) / (pi * pi) < 1e-3);
  CHECK(d.values[0] >= pi * pi);
  const auto via_domain = fem_spectrum_below(Domain::interval(0, 1), Bc::neumann, 4, 50);
  CHECK(via_domain.values.size() == 3u);  // 0, pi^2, 4 pi^2
}

TEST_CASE("upper bounds and monotone refinement") {
  double prev_d = INFINITY, prev_n = INFINITY;
  for (int r = 1; r <= 4; ++r) {
    const AssembledPencil p = assemble(triangulate(kUnitSquare, r));
    const double d = solve_smallest(p, Bc::dirichlet, 1).values[0];
    const double n = solve_smallest(p, Bc::neumann, 2).values[1];
    CHECK(d >= 2 * pi * pi);
    CHECK(n >= pi * pi);
    CHECK(d <= prev_d);
    CHECK(n <= prev_n);
    prev_d = d;
    prev_n = n;
  }
}

TEST_CASE("spectrum below lambda agrees with inertia") {
  const Domain l = Domain::polygon(kLShape);
  const Spectrum s = fem_spectrum_below(l, Bc::neumann, 3, 40);
  CHECK(s.values.front() < 1e-8);
  CHECK(s.values.back() < 40);
  CHECK(s.complete_below == 40);
  CHECK(s.domain_measure == doctest::Approx(3.0));
  // Two disjoint unit squares: every eigenvalue doubles in multiplicity.
  const Domain a = Domain::box({{0, 1}, {0, 1}}), b = Domain::box({{2, 3}, {0, 1}});
  const Spectrum two = fem_spectrum_below(Domain::disjoint_union({a, b}), Bc::neumann, 3, 30);
  const Spectrum one = fem_spectrum_below(a, Bc::neumann, 3, 30);
  CHECK(two.values.size() == 2 * one.values.size());
}

TEST_CASE("richardson estimate widens error bounds") {
  const Domain sq = Domain::box({{0, 1}, {0, 1}});
  const Spectrum e = fem_spectrum_estimated(sq, Bc::dirichlet, 4, 60);
  REQUIRE(e.values.size() >= 1u);
  CHECK(e.discretization_estimated);
  // The widened bracket contains the true value 2 pi^2.
  CHECK(e.values[0] - e.errors[0] <= 2 * pi * pi);
  CHECK(e.values[0] >= 2 * pi * pi);
}

TEST_CASE("convergence study on the unit square") {
  const Domain sq = Domain::box({{0, 1}, {0, 1}});
  const auto t = convergence_study(sq, Bc::dirichlet, 1, {1, 2, 3, 4});
  REQUIRE(t.values.size() == 4u);
  // Errors shrink by about 4 per level.
  for (int i = 1; i + 1 < 4; ++i) {
    const double e0 = t.values[i][0] - 2 * pi * pi, e1 = t.values[i + 1][0] - 2 * pi * pi;
    CHECK(e0 / e1 > 3.5);
    CHECK(e0 / e1 < 4.5);
  }
  CHECK(t.observed_order[0] == doctest::Approx(2.0).epsilon(0.1));
  CHECK(std::abs(t.extrapolated[0] - 2 * pi * pi) < std::abs(t.values[3][0] - 2 * pi * pi));
  CHECK_THROWS_AS(convergence_study(sq, Bc::dirichlet, 1, {3}), polya::InputError);
}

TEST_CASE("convergence study on the L-shape") {
  const auto t = convergence_study(Domain::polygon(kLShape), Bc::dirichlet, 1, {2, 3, 4, 5});
  // Reentrant corner: order below 2, limit near 9.64.
  CHECK(t.observed_order[0] < 2.0);
  CHECK(t.extrapolated[0] == doctest::Approx(9.64).epsilon(0.01));
}

}
