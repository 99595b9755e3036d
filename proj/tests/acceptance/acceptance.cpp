// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "polya/extension.hpp"
#include "polya/fem.hpp"
#include "polya/inequality.hpp"
#include "polya/prover.hpp"
#include "polya/spectrum.hpp"
#include "polya/tiling.hpp"

using namespace polya;
using geometry::Domain;
using spectra::Bc;
using spectra::Spectrum;
using std::numbers::pi;

namespace {

int failures = 0;

void verdict(int n, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t count_below(const Spectrum& s, double lambda) { return inequality::counting_function(s, lambda).count; }

// Independent oracle: lattice points n in N_0^2 with (pi/2)^2 |n|^2 < lambda,
// i.e. Neumann eigenvalues of (-1,1)^2 below lambda.
std::size_t square_oracle(double lambda) {
  std::size_t n = 0;
  for (int a = 0; (pi / 2) * (pi / 2) * a * a < lambda; ++a)
    for (int b = 0; (pi / 2) * (pi / 2) * (a * a + b * b) < lambda; ++b) ++n;
  return n;
}

void cube_counting() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> ul(0.0, 500.0), uL(0.0, 4.0);
  int bad = 0;
  double worst = INFINITY;
  for (int i = 0; i < 1000; ++i) {
    double lambda = ul(rng), L = uL(rng);
    if (lambda == 0) lambda = 500;  // (0, 500]
    if (L == 0) L = 4;
    const int d = 1 + static_cast<int>(rng() % 3);
    const double n = static_cast<double>(spectra::count_box_neumann(lambda, L, d));
    const double b = spectra::cube_lower_bound(lambda, L, d);
    worst = std::min(worst, n - b);
    if (n < b) ++bad;
  }
  const double secs = seconds_since(t0);
  verdict(1, bad == 0 && secs < 10,
          fmt("1000 samples, %g violations, min(count - bound) = %.4g, %.3f s", bad, worst, secs));
}

void oracle_equivalence() {
  int mismatches = 0;
  std::size_t compared = 0;
  for (int d = 1; d <= 3; ++d) {
    for (double L : {1.0, 1.7}) {
      const double lmax = d == 3 ? 1500.0 : 5000.0;
      const std::vector<double> hw(d, L);
      const Spectrum s = spectra::box_spectrum(hw, Bc::neumann, lmax);
      for (int i = 1; i <= 1000; ++i) {
        const double lambda = lmax * i / 1000.0;
        ++compared;
        if (count_below(s, lambda) != spectra::count_box_neumann(lambda, L, d)) ++mismatches;
      }
    }
  }
  verdict(2, mismatches == 0,
          fmt("%g grid points (d = 1..3, L in {1, 1.7}), %g mismatches", static_cast<double>(compared), mismatches));
}

void polya_exact() {
  std::vector<double> grid;
  for (int i = 1; i <= 1000; ++i) grid.push_back(1e4 * i / 1000.0);
  for (int i = 0; i < 200; ++i) grid.push_back(std::pow(10.0, -2 + 6.0 * i / 200));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<Domain> domains;
  for (int d = 1; d <= 3; ++d) domains.push_back(Domain::cube(1.0, d));
  domains.push_back(Domain::interval(0, 1));
  domains.push_back(Domain::interval(0, 3.7));
  domains.push_back(Domain::interval(-2, 0.25));
  std::size_t records = 0, violations = 0;
  for (const auto& dom : domains) {
    const Spectrum dir = *spectra::exact_spectrum(dom, Bc::dirichlet, 1e4 + 1);
    const Spectrum neu = *spectra::exact_spectrum(dom, Bc::neumann, 1e4 + 1);
    const auto a = inequality::check_polya(dir, inequality::Side::dirichlet_upper, grid);
    const auto b = inequality::check_polya(neu, inequality::Side::neumann_lower, grid);
    records += a.records.size() + b.records.size();
    violations += a.violations + b.violations + a.inconclusive + b.inconclusive;
  }
  const std::size_t spot = square_oracle(10.0);
  const double rhs = 4.0 * 10.0 * pi / (4 * pi * pi);  // omega_2 |Omega| lambda / (2 pi)^2 = 10/pi
  const Spectrum sq = *spectra::exact_spectrum(Domain::cube(1.0, 2), Bc::neumann, 20);
  const bool spot_ok = count_below(sq, 10.0) == 6 && spot == 6 &&
                       std::abs(spectra::weyl_term(10.0, 4.0, 2) - rhs) < 1e-12 && std::abs(rhs - 3.1831) < 5e-5;
  verdict(3, violations == 0 && spot_ok,
          fmt("%g records on 3 cubes + 3 intervals, %g violations; N_N(10, (-1,1)^2) = %g >= %.4f",
              static_cast<double>(records), static_cast<double>(violations), static_cast<double>(spot), rhs));
}

void fem_accuracy() {
  const Domain sq = Domain::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const Spectrum exact_d = *spectra::exact_spectrum(Domain::box({{0, 1}, {0, 1}}), Bc::dirichlet, 200);
  const Spectrum exact_n = *spectra::exact_spectrum(Domain::box({{0, 1}, {0, 1}}), Bc::neumann, 200);
  const int m = 5;
  bool above = true, monotone = true;
  double slowest = 0, lam1 = 0, mu2 = 0;
  for (Bc bc : {Bc::dirichlet, Bc::neumann}) {
    const Spectrum& ex = bc == Bc::dirichlet ? exact_d : exact_n;
    std::vector<double> prev;
    for (int level = 1; level <= 5; ++level) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto pencil = fem::assemble(fem::triangulate(sq, level));
      const int avail = bc == Bc::dirichlet ? fem::restrict_dirichlet(pencil).dofs() : pencil.dofs();
      const int mk = std::min(m, avail);
      const Spectrum s = fem::solve_smallest(pencil, bc, mk, fem::kDefaultTol, level);
      const double secs = seconds_since(t0);
      if (level == 5) slowest = std::max(slowest, secs);
      for (int k = 0; k < mk; ++k) {
        const double tol = 1e-8 * std::max(1.0, ex.values[k]);
        if (s.values[k] < ex.values[k] - tol) above = false;
        if (k < static_cast<int>(prev.size()) && s.values[k] > prev[k] + tol) monotone = false;
      }
      prev = s.values;
      if (level == 5) (bc == Bc::dirichlet ? lam1 : mu2) = s.values[bc == Bc::dirichlet ? 0 : 1];
    }
  }
  const double e1 = std::abs(lam1 - 2 * pi * pi) / (2 * pi * pi);
  const double e2 = std::abs(mu2 - pi * pi) / (pi * pi);
  verdict(4, e1 < 0.01 && e2 < 0.01 && above && monotone && slowest < 60,
          fmt("level 5: lambda_1 = %.5f (rel err %.2e), mu_2 = %.5f (rel err %.2e)", lam1, e1, mu2, e2) +
              ", >= exact: " + (above ? "yes" : "no") + ", monotone: " + (monotone ? "yes" : "no") +
              fmt(", slowest level-5 solve %.2f s", slowest));
}

void polya_fem() {
  using tiling::Shape;
  const std::vector<Shape> shapes = {Shape::equilateral_triangle, Shape::right_triangle, Shape::hexagon,
                                     Shape::l_tromino};
  const int level = 4;
  int violations = 0;
  double worst = INFINITY;
  std::string detail;
  for (Shape sh : shapes) {
    const Domain proto = tiling::generate_tiling(sh, 1.0, geometry::Box{{{-1, 1}, {-1, 1}}}).prototile;
    const Spectrum s = fem::fem_spectrum_below(proto, Bc::neumann, level, 101.0);
    for (double lambda : {10.0, 50.0, 100.0}) {
      const double n = static_cast<double>(count_below(s, lambda));
      const double w = spectra::weyl_term(lambda, s.domain_measure, 2);
      worst = std::min(worst, n - w);
      if (n < w) ++violations;
      if (lambda == 100.0) detail += " " + tiling::shape_name(sh) + fmt(" %g>=%.2f", n, w);
    }
  }
  verdict(5, violations == 0,
          fmt("refinement %g, 12 checks, %g violations, min margin %.3f;", level, violations, worst) + detail);
}

void friedlander() {
  const Domain sq = Domain::box({{0, 1}, {0, 1}});
  const auto r = inequality::check_friedlander(*spectra::exact_spectrum(sq, Bc::dirichlet, 2000),
                                               *spectra::exact_spectrum(sq, Bc::neumann, 2000), 20);
  bool strict = r.pass && r.records.size() == 20;
  for (const auto& c : r.records) strict = strict && c.lhs < c.rhs;
  double worst = 0;
  std::size_t eq = 0;
  for (double len : {1.0, 2.5, 0.3}) {
    const auto iv = inequality::check_friedlander(spectra::interval_spectrum(len, Bc::dirichlet, 21),
                                                  spectra::interval_spectrum(len, Bc::neumann, 22), 20);
    for (const auto& c : iv.records) {
      const double rel = std::abs(c.lhs - c.rhs) / c.rhs;
      worst = std::max(worst, rel);
      if (rel <= 1e-12) ++eq;
    }
  }
  verdict(6, strict && eq == 60,
          fmt("square: %g strict records; intervals: %g of 60 equal, max relative gap %.1e",
              static_cast<double>(r.records.size()), static_cast<double>(eq), worst));
}

void extension_bound() {
  const double h = 1.0 / 128, L = 1.0, R = 0.5;
  int fails = 0, warnings = 0, trials = 0;
  double max_ratio = 0;
  for (int d = 1; d <= 2; ++d) {
    for (int i = 0; i < 200; ++i) {
      const auto f = extension::random_trig_field(d, h, L, R, 1000 * d + i, i % 2 == 1);
      const auto c = extension::check_extension_bound(f, R);
      ++trials;
      const double slack = std::min(10 * h, c.slack);
      if (!(c.extended <= c.bound + slack) || !c.restriction_exact) ++fails;
      if (c.warning) ++warnings;
      max_ratio = std::max(max_ratio, c.ratio / (d == 1 ? 2.0 : 4.0));
    }
  }
  const auto lin = extension::check_extension_bound(
      extension::make_field(1, h, L, [](const geometry::Point& x) { return x(0); }), R);
  const bool lin_ok = std::abs(lin.extended - 4.25) <= 0.01 * 4.25 && std::abs(lin.original - 8.0 / 3) <= 0.01 * 8 / 3 &&
                      std::abs(lin.bound - 16.0 / 3) <= 0.01 * 16 / 3 && lin.extended <= lin.bound;
  verdict(7, fails == 0 && lin_ok,
          fmt("%g fields, %g failures, %g warnings, max ratio/2^d %.3f;", trials, fails, warnings, max_ratio) +
              fmt(" f(x) = x: %.4f <= %.4f", lin.extended, lin.bound));
}

void count_transfer() {
  std::vector<double> lams;
  for (int i = 1; i <= 100; ++i) lams.push_back(0.5 * i);
  const auto r = extension::check_count_transfer(lams, Domain::interval(-1, 1), Domain::interval(-1.5, 1.5), 2.0);
  const auto it = std::find_if(r.records.begin(), r.records.end(), [](const auto& c) { return c.at == 10.0; });
  const bool spot = it != r.records.end() && it->lhs == 3 && it->rhs == 5 &&
                    spectra::count_box_neumann(10, 1, 1) == 3 && spectra::count_box_neumann(22, 1.5, 1) == 5;
  verdict(8, r.pass && r.records.size() == 100 && r.violations == 0 && spot,
          fmt("%g lambda values, %g violations; lambda = 10: %g <= %g", static_cast<double>(r.records.size()),
              static_cast<double>(r.violations), it != r.records.end() ? it->lhs : NAN,
              it != r.records.end() ? it->rhs : NAN));
}

void proof_replay() {
  const auto r = prover::proof_report(tiling::Shape::square, 100.0, {8, 32, 1024});
  const auto& last = r.rows.back();
  const double w = spectra::weyl_term(100.0, 1.0, 2);
  // Independent: R = sqrt 2 for the unit square, d = 2.
  const double R = std::sqrt(2.0);
  const double defect = (std::pow(1024 + R, 2) - std::pow(1024 - 2 * R, 2)) / (1024.0 * 1024.0);
  // N on the unit square at 2^d (lambda + 1) = 404 is the (-1,1)^2 count at 101.
  const std::size_t inflated = square_oracle(101.0);
  const double bound = w - defect * static_cast<double>(inflated);
  const bool values = std::abs(last.defect - 0.00828) < 5e-6 && std::abs(last.defect - defect) < 1e-15 &&
                      std::abs(last.lower_bound - 7.635) < 5e-4 && std::abs(last.lower_bound - bound) < 1e-9 &&
                      r.n_self == 13 && r.n_inflated == inflated && last.lower_bound <= 13 && std::abs(last.lower_bound - w) / w < 0.05;
  const auto idx = prover::proof_report(tiling::Shape::square, 100.0, {8, 16, 32});
  bool idx_ok = idx.index_bounds_ok;
  for (const auto& row : idx.rows) idx_ok = idx_ok && row.index_bounds.has_value();
  const auto is4 = tiling::index_sets(tiling::generate_tiling(tiling::Shape::square, 1.0, tiling::index_window(4, R)), 4);
  const bool at4 = is4.I.size() == 16 && is4.K.size() == 48;
  verdict(9, values && r.monotone && idx_ok && at4 && r.pass,
          fmt("defect(1024) = %.6f, bound = %.4f <= N_N = %g, weyl = %.4f;", last.defect, last.lower_bound,
              static_cast<double>(r.n_self), w) +
              fmt(" monotone %g, index bounds at 8/16/32 %g, #I = %g, #K = %g at L = 4", r.monotone, idx_ok,
                  static_cast<double>(is4.I.size()), static_cast<double>(is4.K.size())));
}

void weyl_ratio() {
  const Spectrum s = *spectra::exact_spectrum(Domain::cube(1.0, 2), Bc::neumann, 1e4 + 1);
  const auto t = inequality::check_weyl_ratio(s, {1e2, 1e3, 1e4});
  const double oracle = static_cast<double>(square_oracle(1e4)) / spectra::weyl_term(1e4, 4.0, 2);
  const double ratio = t.rows.back().ratio;
  verdict(10, t.pass && ratio >= 1.0 && ratio <= 1.05 && std::abs(oracle - ratio) < 1e-12,
          fmt("ratios %.4f, %.4f, %.4f; deviation decreasing %g", t.rows[0].ratio, t.rows[1].ratio, ratio,
              t.deviation_decreasing));
}

}  // namespace

int main() {
  cube_counting();
  oracle_equivalence();
  polya_exact();
  fem_accuracy();
  polya_fem();
  friedlander();
  extension_bound();
  count_transfer();
  proof_replay();
  weyl_ratio();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
