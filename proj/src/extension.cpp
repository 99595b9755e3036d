#include "polya/extension.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "polya/error.hpp"
#include "polya/fem.hpp"
#include "polya/parallel.hpp"
#include "polya/simd.hpp"

namespace polya::extension {
namespace {

constexpr double kPi = 3.14159265358979323846;

int grid_steps(double x, double h, const char* what) {
  const double q = x / h;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q)))
    throw InputError(std::string(what) + " must be a multiple of the grid spacing");
  return static_cast<int>(r);
}

void check_dim(int dim) {
  if (dim != 1 && dim != 2) throw InputError("grid fields support d = 1 or d = 2");
}

// Trapezoidal weight of node i along one axis of a grid with nodes 0..last.
double trap(int i, int last, double h) { return (i == 0 || i == last) ? 0.5 * h : h; }

// Uniform double in [0, 1) from raw generator bits (portable across libraries).
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Counts {
  spectra::Spectrum s;
  bool fem = false;
};

Counts neumann_counts(const Domain& d, double lambda_max, bool widened, const TransferOptions& opt) {
  if (auto e = spectra::exact_spectrum(d, spectra::Bc::neumann, widened ? 1.25 * lambda_max + 1.0 : lambda_max))
    return {*e, false};
  if (widened) return {fem::fem_spectrum_covering(d, spectra::Bc::neumann, opt.refinement, lambda_max, opt.tol), true};
  return {fem::fem_spectrum_below(d, spectra::Bc::neumann, opt.refinement, lambda_max, opt.tol), true};
}

}  // namespace

std::size_t GridField::size() const {
  const std::size_t n = static_cast<std::size_t>(nodes_per_axis());
  return dim == 1 ? n : n * n;
}

Point GridField::node(std::size_t flat) const {
  const std::size_t n = static_cast<std::size_t>(nodes_per_axis());
  Point p(dim);
  const double a = half_width();
  p(0) = -a + static_cast<double>(flat % n) * h;
  if (dim == 2) p(1) = -a + static_cast<double>(flat / n) * h;
  return p;
}

void GridField::validate() const {
  check_dim(dim);
  if (!(h > 0) || !std::isfinite(h)) throw InputError("grid field: spacing must be positive");
  if (half_cells < 1) throw InputError("grid field: need at least one cell per half-axis");
  if (values.size() != size() || mask.size() != size()) throw InputError("grid field: size mismatch");
}

GridField make_field(int dim, double h, double L, const std::function<double(const Point&)>& f,
                     const std::vector<Box>& holes) {
  check_dim(dim);
  if (!(h > 0) || !(L > 0)) throw InputError("grid field: h and L must be positive");
  GridField g;
  g.dim = dim;
  g.h = h;
  g.half_cells = grid_steps(L, h, "L");
  if (g.half_cells < 1) throw InputError("grid field: L must be at least h");
  const int n = g.nodes_per_axis();
  // Hole index ranges [lo, hi] per axis.
  std::vector<std::array<int, 4>> ranges;
  for (const auto& q : holes) {
    if (q.dim() != dim) throw InputError("grid field: hole dimension mismatch");
    std::array<int, 4> r{0, 0, 0, 0};
    for (int k = 0; k < dim; ++k) {
      r[2 * k] = grid_steps(q.sides[k].lo + L, h, "hole corner");
      r[2 * k + 1] = grid_steps(q.sides[k].hi + L, h, "hole corner");
      if (r[2 * k] > r[2 * k + 1]) throw InputError("grid field: empty hole");
    }
    ranges.push_back(r);
  }
  g.values.resize(g.size());
  g.mask.assign(g.size(), 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int ix = static_cast<int>(i % n), iy = dim == 2 ? static_cast<int>(i / n) : 0;
    for (const auto& r : ranges)
      if (ix >= r[0] && ix <= r[1] && (dim == 1 || (iy >= r[2] && iy <= r[3]))) g.mask[i] = 0;
    g.values[i] = g.mask[i] ? f(g.node(i)) : 0.0;
  }
  return g;
}

Point reflect_point(const Point& x, double L, double R) {
  if (!(L > 0) || !(R >= 0)) throw InputError("reflect_point: need L > 0 and R >= 0");
  Point y(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double v = x(j);
    if (!(v > -L - R && v < L + R)) throw InputError("reflect_point: point outside the padded box");
    y(j) = v < -L ? -2 * L - v : (v > L ? 2 * L - v : v);
  }
  return y;
}

GridField extend_field(const GridField& f, double R) {
  f.validate();
  const int r = grid_steps(R, f.h, "R");
  const int n = f.half_cells;
  if (r < 0 || r > n) throw InputError("extend_field: need 0 <= R <= L");
  const int nin = f.nodes_per_axis();
  // Every masked node must sit strictly inside (-L+R, L-R)^d.
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.mask[i]) continue;
    const int ix = static_cast<int>(i % nin), iy = f.dim == 2 ? static_cast<int>(i / nin) : n;
    if (!(ix > r && ix < 2 * n - r && iy > r && iy < 2 * n - r))
      throw InputError("extend_field: hole Q is not inside (-L+R, L-R)^d");
  }
  GridField g;
  g.dim = f.dim;
  g.h = f.h;
  g.half_cells = n + r;
  const int nout = g.nodes_per_axis();
  auto fold = [&](int io) {
    const int rel = io - r;
    return rel < 0 ? -rel : (rel > 2 * n ? 4 * n - rel : rel);
  };
  g.values.resize(g.size());
  g.mask.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int jx = fold(static_cast<int>(i % nout));
    const std::size_t src =
        f.dim == 1 ? jx : static_cast<std::size_t>(fold(static_cast<int>(i / nout))) * nin + jx;
    g.values[i] = f.values[src];
    g.mask[i] = f.mask[src];
  }
  return g;
}

GridField restrict_field(const GridField& e, int half_cells) {
  e.validate();
  const int r = e.half_cells - half_cells;
  if (half_cells < 1 || r < 0) throw InputError("restrict_field: target grid larger than source");
  GridField g;
  g.dim = e.dim;
  g.h = e.h;
  g.half_cells = half_cells;
  const int n = g.nodes_per_axis(), ne = e.nodes_per_axis();
  g.values.resize(g.size());
  g.mask.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::size_t ix = i % n + r;
    const std::size_t src = e.dim == 1 ? ix : (i / n + r) * ne + ix;
    g.values[i] = e.values[src];
    g.mask[i] = e.mask[src];
  }
  return g;
}

double sobolev_norm_sq(const GridField& f) {
  f.validate();
  const auto& k = simd::kernels();
  const int n = f.nodes_per_axis(), last = n - 1;
  const double h = f.h;
  std::vector<double> w(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const int ix = static_cast<int>(i % n);
    double t = trap(ix, last, h);
    if (f.dim == 2) t *= trap(static_cast<int>(i / n), last, h);
    w[i] = f.mask[i] ? t : 0.0;
  }
  const double l2 = k.weighted_sq_sum(f.values.data(), w.data(), f.size());

  if (f.dim == 1) {
    std::vector<std::uint8_t> pair(last);
    for (int i = 0; i < last; ++i) pair[i] = f.mask[i] & f.mask[i + 1];
    return l2 + k.masked_diff_sq_sum(f.values.data() + 1, f.values.data(), pair.data(), last) / h;
  }

  // Per-row partial sums, added in row order so the result is deterministic.
  std::vector<double> gx(n, 0.0), gy(last, 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t b, std::size_t e) {
    std::vector<std::uint8_t> pair(n);
    for (std::size_t j = b; j < e; ++j) {
      const std::size_t row = j * n;
      for (int i = 0; i < last; ++i) pair[i] = f.mask[row + i] & f.mask[row + i + 1];
      const double s = k.masked_diff_sq_sum(f.values.data() + row + 1, f.values.data() + row, pair.data(), last);
      gx[j] = trap(static_cast<int>(j), last, h) * s / h;
      if (static_cast<int>(j) == last) continue;
      const std::size_t up = row + n;
      for (int i = 0; i < n; ++i) pair[i] = f.mask[row + i] & f.mask[up + i];
      const double* a = f.values.data() + up;
      const double* c = f.values.data() + row;
      double sy = h * k.masked_diff_sq_sum(a + 1, c + 1, pair.data() + 1, n - 2);
      for (int i : {0, last})
        if (pair[i]) sy += 0.5 * h * (a[i] - c[i]) * (a[i] - c[i]);
      gy[j] = sy / h;
    }
  });
  double grad = 0.0;
  for (double v : gx) grad += v;
  for (double v : gy) grad += v;
  return l2 + grad;
}

ExtensionCheck check_extension_bound(const GridField& f, double R) {
  f.validate();
  ExtensionCheck c;
  c.dim = f.dim;
  c.h = f.h;
  c.L = f.half_width();
  c.R = R;
  const GridField e = extend_field(f, R);
  c.original = sobolev_norm_sq(f);
  c.extended = sobolev_norm_sq(e);
  c.bound = std::pow(2.0, f.dim) * c.original;
  double fmax = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.mask[i]) fmax = std::max(fmax, std::abs(f.values[i]));
  c.slack = 10.0 * fmax * f.h;
  c.ratio = c.original > 0 ? c.extended / c.original : 0.0;
  c.within_bound = c.extended <= c.bound;
  c.within_slack = c.extended <= c.bound + c.slack;
  const GridField back = restrict_field(e, f.half_cells);
  c.restriction_exact = back.mask == f.mask;
  for (std::size_t i = 0; i < f.size() && c.restriction_exact; ++i)
    if (f.mask[i] && back.values[i] != f.values[i]) c.restriction_exact = false;
  c.pass = c.within_slack && c.restriction_exact;
  c.warning = c.pass && !c.within_bound;
  return c;
}

GridField random_trig_field(int dim, double h, double L, double R, std::uint64_t seed, bool with_hole,
                            int terms) {
  check_dim(dim);
  if (terms < 1) throw InputError("random field: need at least one term");
  std::mt19937_64 rng(seed);
  struct Term {
    double a, w[2], phi[2];
  };
  const double offset = 2 * unit(rng) - 1;
  std::vector<Term> ts(terms);
  for (auto& t : ts) {
    t.a = 2 * unit(rng) - 1;
    for (int k = 0; k < 2; ++k) {
      t.w[k] = 3 * kPi * unit(rng);
      t.phi[k] = 2 * kPi * unit(rng);
    }
  }
  std::vector<Box> holes;
  if (with_hole && dim == 2) {
    const int n = grid_steps(L, h, "L"), r = grid_steps(R, h, "R");
    // Index range strictly inside (r, 2n - r).
    const int lo = r + 1, hi = 2 * n - r - 1;
    if (lo <= hi) {
      std::vector<geometry::Interval> sides;
      for (int k = 0; k < 2; ++k) {
        const int span = hi - lo + 1;
        int a = lo + static_cast<int>(unit(rng) * span);
        int b = lo + static_cast<int>(unit(rng) * span);
        if (a > b) std::swap(a, b);
        sides.push_back({-L + a * h, -L + b * h});
      }
      holes.push_back(Box{sides});
    }
  }
  auto f = [&](const Point& x) {
    double v = offset;
    for (const auto& t : ts) {
      double p = t.a * std::cos(t.w[0] * x(0) + t.phi[0]);
      if (dim == 2) p *= std::cos(t.w[1] * x(1) + t.phi[1]);
      v += p;
    }
    return v;
  };
  return make_field(dim, h, L, f, holes);
}

inequality::InequalityReport check_count_transfer(const std::vector<double>& lambdas, const Domain& inner,
                                                  const Domain& outer, double norm_sq_bound,
                                                  const TransferOptions& opt) {
  if (lambdas.empty()) throw InputError("count transfer: empty lambda grid");
  if (!(norm_sq_bound >= 1)) throw InputError("count transfer: norm bound must be at least 1");
  if (inner.dim() != outer.dim()) throw InputError("count transfer: dimension mismatch");
  double lmax = 0.0;
  for (double l : lambdas) {
    if (!(l >= 0) || !std::isfinite(l)) throw InputError("count transfer: lambda must be nonnegative");
    lmax = std::max(lmax, l);
  }
  // Inner counts are upper-bracketed, so the inner spectrum reaches past lmax.
  const Counts in = neumann_counts(inner, lmax, true, opt);
  const Counts out = neumann_counts(outer, norm_sq_bound * (lmax + 1.0) * (1 + 1e-12), false, opt);
  inequality::InequalityReport r;
  r.tag = "count-transfer";
  r.relation = "<=";
  for (double l : lambdas) {
    const auto a = inequality::counting_function(in.s, l);
    const double big = norm_sq_bound * (l + 1.0);
    const auto b = inequality::counting_function(out.s, big);
    if (!b.complete || (in.fem && !in.s.discretization_estimated && l + provenance_of(in.s).error > in.s.complete_below) ||
        l > in.s.complete_below)
      throw SolverError("count transfer: spectrum does not reach the requested lambda");
    inequality::CheckRecord rec;
    rec.at = l;
    rec.lhs = static_cast<double>(a.count);
    rec.rhs = static_cast<double>(b.count);
    rec.lhs_provenance = provenance_of(in.s);
    rec.rhs_provenance = provenance_of(out.s);
    // The true inner count may reach a.upper; the discrete outer count never exceeds the true one.
    rec.margin = rec.rhs - static_cast<double>(a.upper);
    rec.caveat = in.fem;
    rec.equality = rec.lhs == rec.rhs;
    rec.pass = rec.margin >= 0 && !a.upper_open;
    // Decisive only when the raw inner count beats an exact outer count.
    if (!rec.pass) rec.inconclusive = out.fem || (in.fem && rec.lhs <= rec.rhs);
    r.records.push_back(rec);
  }
  r.finalize();
  return r;
}

}  // namespace polya::extension
