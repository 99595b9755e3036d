#include "polya/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "polya/error.hpp"

namespace polya::spectra {
namespace {

constexpr double kPi = 3.14159265358979323846;

// #{n >= 0 : base + n^2 < r2}, with base + n^2 compared exactly in double.
std::uint64_t count_last_axis(std::uint64_t base, double r2) {
  if (!(static_cast<double>(base) < r2)) return 0;
  auto fits = [&](std::uint64_t n) { return static_cast<double>(base + n * n) < r2; };
  auto m = static_cast<std::uint64_t>(std::sqrt(std::max(0.0, r2 - static_cast<double>(base))));
  while (m > 0 && !fits(m)) --m;
  while (fits(m + 1)) ++m;
  return m + 1;
}

std::uint64_t count_recursive(int d, std::uint64_t base, double r2) {
  if (d == 1) return count_last_axis(base, r2);
  std::uint64_t total = 0;
  for (std::uint64_t n = 0; static_cast<double>(base + n * n) < r2; ++n)
    total += count_recursive(d - 1, base + n * n, r2);
  return total;
}

void enumerate_box(std::span<const double> coef, std::size_t axis, double partial,
                   double lambda_max, std::uint64_t first, std::vector<double>& out) {
  if (axis == coef.size()) {
    out.push_back(partial);
    return;
  }
  for (std::uint64_t n = first;; ++n) {
    const double v = partial + coef[axis] * static_cast<double>(n * n);
    // Later axes only add nonnegative terms.
    const double floor_rest = [&] {
      double s = 0.0;
      for (std::size_t j = axis + 1; j < coef.size(); ++j)
        s += coef[j] * static_cast<double>(first * first);
      return s;
    }();
    if (!(v + floor_rest < lambda_max)) break;
    enumerate_box(coef, axis + 1, v, lambda_max, first, out);
  }
}

Spectrum merge(std::vector<Spectrum> parts, Bc bc, double lambda_max) {
  Spectrum s;
  s.bc = bc;
  s.dim = parts.front().dim;
  s.complete_below = lambda_max;
  for (const auto& p : parts) {
    s.values.insert(s.values.end(), p.values.begin(), p.values.end());
    s.domain_measure += p.domain_measure;
    s.complete_below = std::min(s.complete_below, p.complete_below);
  }
  std::sort(s.values.begin(), s.values.end());
  s.errors.assign(s.values.size(), 0.0);
  return s;
}

Spectrum interval_below(double length, Bc bc, double lambda_max) {
  Spectrum s;
  s.bc = bc;
  s.dim = 1;
  s.domain_measure = length;
  s.complete_below = lambda_max;
  const double c = kPi * kPi / (length * length);
  for (std::uint64_t k = bc == Bc::dirichlet ? 1 : 0;; ++k) {
    const double v = c * static_cast<double>(k * k);
    if (!(v < lambda_max)) break;
    s.values.push_back(v);
  }
  s.errors.assign(s.values.size(), 0.0);
  return s;
}

}  // namespace

std::string bc_name(Bc bc) { return bc == Bc::dirichlet ? "dirichlet" : "neumann"; }

Bc parse_bc(const std::string& s) {
  if (s == "dirichlet" || s == "D") return Bc::dirichlet;
  if (s == "neumann" || s == "N") return Bc::neumann;
  throw InputError("unknown boundary condition '" + s + "'");
}

void check_spectrum(const Spectrum& s) {
  if (s.errors.size() != s.values.size())
    throw InputError("spectrum: error bounds and values differ in length");
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (!std::isfinite(s.values[i]) || s.values[i] < 0) throw InputError("spectrum: bad value");
    if (i > 0 && s.values[i] < s.values[i - 1]) throw InputError("spectrum: values not sorted");
    if (s.errors[i] < 0) throw InputError("spectrum: negative error bound");
  }
  if (s.dim > 0 && s.bc == Bc::dirichlet && !s.values.empty() && !(s.values.front() > 0))
    throw InputError("spectrum: Dirichlet eigenvalues must be positive");
}

double unit_ball_volume(int d) {
  if (d < 0) throw InputError("unit ball volume: negative dimension");
  double w = d % 2 == 0 ? 1.0 : 2.0;
  for (int k = d % 2 == 0 ? 2 : 3; k <= d; k += 2) w *= 2.0 * kPi / k;
  return w;
}

double weyl_term(double lambda, double measure, int d) {
  if (lambda < 0) throw InputError("weyl term: lambda must be nonnegative");
  if (!(measure > 0)) throw InputError("weyl term: measure must be positive");
  return unit_ball_volume(d) * measure * std::pow(lambda, 0.5 * d) / std::pow(2.0 * kPi, d);
}

double cube_lower_bound(double lambda, double L, int d) {
  return unit_ball_volume(d) * std::pow(kPi, -d) * std::pow(L, d) * std::pow(lambda, 0.5 * d);
}

Spectrum interval_spectrum(double length, Bc bc, int count) {
  if (!(length > 0)) throw InputError("interval spectrum: length must be positive");
  if (count < 1) throw InputError("interval spectrum: count must be at least 1");
  Spectrum s;
  s.bc = bc;
  s.dim = 1;
  s.domain_measure = length;
  const double c = kPi * kPi / (length * length);
  const int first = bc == Bc::dirichlet ? 1 : 0;
  for (int k = first; k < first + count; ++k) s.values.push_back(c * k * k);
  const double next = first + count;
  s.complete_below = c * next * next;
  s.errors.assign(s.values.size(), 0.0);
  return s;
}

Spectrum box_spectrum(std::span<const double> half_widths, Bc bc, double lambda_max) {
  if (half_widths.empty()) throw InputError("box spectrum: need at least one axis");
  if (!(lambda_max > 0)) throw InputError("box spectrum: lambda_max must be positive");
  std::vector<double> coef;
  double measure = 1.0;
  for (double a : half_widths) {
    if (!(a > 0)) throw InputError("box spectrum: half-widths must be positive");
    coef.push_back(kPi * kPi / (4.0 * a * a));
    measure *= 2.0 * a;
  }
  const int d = static_cast<int>(half_widths.size());
  // Neumann count upper estimate: product over axes of (1 + radius).
  double estimate = 1.0;
  for (double c : coef) estimate *= 1.0 + std::sqrt(lambda_max / c);
  if (estimate > 5e7) throw InputError("box spectrum: too many eigenvalues below lambda_max");

  Spectrum s;
  s.bc = bc;
  s.dim = d;
  s.domain_measure = measure;
  s.complete_below = lambda_max;
  enumerate_box(coef, 0, 0.0, lambda_max, bc == Bc::dirichlet ? 1 : 0, s.values);
  std::sort(s.values.begin(), s.values.end());
  s.errors.assign(s.values.size(), 0.0);
  return s;
}

std::uint64_t count_box_neumann(double lambda, double L, int d) {
  if (!(lambda > 0) || !(L > 0)) throw InputError("cube count: lambda and L must be positive");
  if (d < 1) throw InputError("cube count: dimension must be at least 1");
  const double r = 2.0 * L * std::sqrt(lambda) / kPi;
  // Work is about r^{d-1}; the count itself about r^d.
  if (std::pow(r + 1.0, d) > 1e15 || std::pow(r + 1.0, d - 1) > 2e9)
    throw InputError("cube count: radius too large for exact enumeration");
  return count_recursive(d, 0, r * r);
}

Spectrum point_spectrum(Bc bc) {
  Spectrum s;
  s.bc = bc;
  s.dim = 0;
  s.domain_measure = 1.0;
  s.values = {0.0};
  s.errors = {0.0};
  return s;
}

Spectrum product_spectrum(const Spectrum& a, const Spectrum& b, double lambda_max) {
  if (a.bc != b.bc) throw InputError("product spectrum: boundary conditions differ");
  if (!a.is_exact() || !b.is_exact()) throw InputError("product spectrum: exact factors only");
  if (a.values.empty() || b.values.empty())
    throw InputError("product spectrum: empty factor spectrum");
  Spectrum s;
  s.bc = a.bc;
  s.dim = a.dim + b.dim;
  s.domain_measure = a.domain_measure * b.domain_measure;
  s.complete_below = std::min({lambda_max, a.complete_below + b.values.front(),
                               b.complete_below + a.values.front()});
  for (double x : a.values)
    for (double y : b.values)
      if (x + y < lambda_max) s.values.push_back(x + y);
  std::sort(s.values.begin(), s.values.end());
  s.errors.assign(s.values.size(), 0.0);
  return s;
}

double bessel_j0(double x) {
  // Alternating power series; terms decay fast for |x| <= 10.
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

double bessel_j0_first_zero() {
  static const double root = [] {
    double lo = 2.0, hi = 3.0;
    while (hi - lo > 1e-14) {
      const double mid = 0.5 * (lo + hi);
      (bessel_j0(mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return root;
}

double ball_dirichlet_lambda1(double radius) {
  if (!(radius > 0)) throw InputError("disk eigenvalue: radius must be positive");
  const double j = bessel_j0_first_zero();
  return j * j / (radius * radius);
}

std::optional<Spectrum> exact_spectrum(const geometry::Domain& dom, Bc bc, double lambda_max) {
  using namespace geometry;
  if (!(lambda_max > 0)) throw InputError("exact spectrum: lambda_max must be positive");
  if (auto* u = dom.as<IntervalUnion>()) {
    std::vector<Spectrum> parts;
    for (const auto& iv : u->intervals) parts.push_back(interval_below(iv.length(), bc, lambda_max));
    return merge(std::move(parts), bc, lambda_max);
  }
  if (auto* b = dom.as<Box>()) {
    std::vector<double> half;
    for (const auto& s : b->sides) half.push_back(0.5 * s.length());
    return box_spectrum(half, bc, lambda_max);
  }
  if (auto* c = dom.as<CopyOf>()) return exact_spectrum(*c->base, bc, lambda_max);
  if (auto* u = dom.as<DisjointUnion>()) {
    std::vector<Spectrum> parts;
    for (const auto& m : u->members) {
      auto p = exact_spectrum(m, bc, lambda_max);
      if (!p) return std::nullopt;
      parts.push_back(std::move(*p));
    }
    return merge(std::move(parts), bc, lambda_max);
  }
  if (auto* p = dom.as<Product>()) {
    auto a = exact_spectrum(*p->first, bc, lambda_max);
    auto b = exact_spectrum(*p->second, bc, lambda_max);
    if (!a || !b) return std::nullopt;
    return product_spectrum(*a, *b, lambda_max);
  }
  return std::nullopt;
}

}  // namespace polya::spectra
