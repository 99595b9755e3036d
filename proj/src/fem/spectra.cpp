#include <algorithm>
#include <cmath>
#include <limits>

#include "polya/error.hpp"
#include "polya/fem.hpp"

namespace polya::fem {
namespace {

struct Piece {
  AssembledPencil pencil;
  double measure = 0.0;
  int dim = 2;
};

// Intervals use 2^(refinement+2) elements each.
std::vector<Piece> pieces_of(const geometry::Domain& dom, int refinement) {
  std::vector<Piece> out;
  if (dom.dim() == 1) {
    auto* u = dom.as<geometry::IntervalUnion>();
    if (!u) throw InputError("fem: unsupported one-dimensional domain");
    for (const auto& iv : u->intervals)
      out.push_back({assemble_interval(iv.length(), 1 << (refinement + 2)), iv.length(), 1});
    return out;
  }
  auto polys = geometry::flatten_polygons(dom);
  if (!polys || polys->empty()) throw InputError("fem: domain is not a union of planar polygons");
  for (const auto& poly : *polys) {
    const Mesh mesh = triangulate(poly, refinement);
    out.push_back({assemble(mesh), std::abs(geometry::polygon_signed_area(poly)), 2});
  }
  return out;
}

Spectrum below_one(const Piece& pc, Bc bc, int refinement, double lambda_max, double tol) {
  const AssembledPencil p = bc == Bc::dirichlet ? restrict_dirichlet(pc.pencil) : pc.pencil;
  Spectrum s;
  s.bc = bc;
  s.method = spectra::Method::fem;
  s.dim = pc.dim;
  s.domain_measure = pc.measure;
  s.complete_below = lambda_max;
  s.fem_level = refinement;
  const std::size_t n_below = count_below_inertia(p, lambda_max);
  if (n_below == 0) return s;
  const int m = static_cast<int>(std::min<std::size_t>(n_below + 1, p.dofs()));
  const EigenSolution sol = solve_pencil(p, m, tol);
  std::size_t got = 0;
  for (std::size_t i = 0; i < sol.values.size(); ++i) {
    if (!(sol.values[i] < lambda_max)) continue;
    ++got;
    s.values.push_back(std::max(0.0, sol.values[i]));
    s.errors.push_back(sol.error_bounds[i]);
  }
  if (got != n_below)
    throw SolverError("fem: eigensolver count " + std::to_string(got) + " disagrees with inertia count " +
                      std::to_string(n_below));
  return s;
}

Spectrum merge(std::vector<Spectrum> parts, Bc bc, double lambda_max, int level) {
  Spectrum s;
  s.bc = bc;
  s.method = spectra::Method::fem;
  s.dim = parts.front().dim;
  s.complete_below = lambda_max;
  s.fem_level = level;
  std::vector<std::pair<double, double>> all;
  for (const auto& p : parts) {
    s.domain_measure += p.domain_measure;
    for (std::size_t i = 0; i < p.values.size(); ++i) all.emplace_back(p.values[i], p.errors[i]);
  }
  std::sort(all.begin(), all.end());
  for (auto [v, e] : all) {
    s.values.push_back(v);
    s.errors.push_back(e);
  }
  return s;
}

}  // namespace

Spectrum solve_smallest(const AssembledPencil& p, Bc bc, int m, double tol, int level) {
  const AssembledPencil q = bc == Bc::dirichlet ? restrict_dirichlet(p) : p;
  const EigenSolution sol = solve_pencil(q, m, tol);
  Spectrum s;
  s.bc = bc;
  s.method = spectra::Method::fem;
  s.dim = p.dim;
  s.fem_level = level;
  // The constant function has M-norm squared |Omega| on the full pencil.
  std::vector<double> ones(p.dofs(), 1.0), mo(p.dofs());
  p.mass.multiply(ones.data(), mo.data());
  for (double x : mo) s.domain_measure += x;
  for (std::size_t i = 0; i < sol.values.size(); ++i) {
    s.values.push_back(std::max(0.0, sol.values[i]));
    s.errors.push_back(sol.error_bounds[i]);
  }
  // Only the first m are known; nothing guarantees completeness beyond them.
  s.complete_below = s.values.back();
  return s;
}

Spectrum fem_spectrum_below(const geometry::Domain& dom, Bc bc, int refinement, double lambda_max,
                            double tol) {
  if (!(lambda_max > 0)) throw InputError("fem: lambda_max must be positive");
  std::vector<Spectrum> parts;
  for (const auto& pc : pieces_of(dom, refinement))
    parts.push_back(below_one(pc, bc, refinement, lambda_max, tol));
  return merge(std::move(parts), bc, lambda_max, refinement);
}

Spectrum fem_spectrum_estimated(const geometry::Domain& dom, Bc bc, int refinement, double lambda_max,
                                double tol) {
  constexpr double kResolvedJump = 0.1;
  if (refinement < 1) throw InputError("fem: Richardson estimate needs refinement >= 1");
  std::vector<Spectrum> parts;
  const auto fine_pieces = pieces_of(dom, refinement);
  const auto coarse_pieces = pieces_of(dom, refinement - 1);
  for (std::size_t k = 0; k < fine_pieces.size(); ++k) {
    Spectrum fine = below_one(fine_pieces[k], bc, refinement, lambda_max, tol);
    if (fine.values.empty()) {
      parts.push_back(std::move(fine));
      continue;
    }
    const AssembledPencil& cp = coarse_pieces[k].pencil;
    const int avail = bc == Bc::dirichlet ? restrict_dirichlet(cp).dofs() : cp.dofs();
    const int m = static_cast<int>(fine.values.size());
    if (m > avail) throw SolverError("fem: coarse level has too few degrees of freedom for the estimate");
    const Spectrum coarse = solve_smallest(cp, bc, m, tol, refinement - 1);
    for (int i = 0; i < m; ++i) {
      // Second order: lambda_h - lambda_0 ~ (lambda_2h - lambda_h) / 3.
      // Outside the asymptotic range the ratio 1/3 is not trusted; the
      // whole jump is used instead.
      const double jump = std::max(0.0, coarse.values[i] - fine.values[i]);
      const double est = jump <= kResolvedJump * fine.values[i] ? jump / 3.0 : jump;
      fine.errors[i] = std::max(fine.errors[i], est);
    }
    fine.discretization_estimated = true;
    parts.push_back(std::move(fine));
  }
  Spectrum s = merge(std::move(parts), bc, lambda_max, refinement);
  s.discretization_estimated = true;
  return s;
}

Spectrum fem_spectrum_covering(const geometry::Domain& dom, Bc bc, int refinement, double lambda,
                               double tol) {
  double cut = 1.25 * lambda + 1.0;
  Spectrum s = fem_spectrum_estimated(dom, bc, refinement, cut, tol);
  for (int round = 0; round < 6; ++round) {
    if (!s.values.empty() && s.values.back() - s.errors.back() >= lambda) break;
    cut *= 1.5;
    try {
      s = fem_spectrum_estimated(dom, bc, refinement, cut, tol);
    } catch (const SolverError&) {
      break;
    }
  }
  return s;
}

ConvergenceTable convergence_study(const geometry::Domain& dom, Bc bc, int k, const std::vector<int>& levels,
                                   double tol) {
  if (k < 1) throw InputError("convergence: k must be at least 1");
  if (levels.size() < 2) throw InputError("convergence: need at least two levels");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1]) throw InputError("convergence: levels must be increasing");
  ConvergenceTable t;
  t.levels = levels;
  for (int lev : levels) {
    const Mesh mesh = triangulate(dom, lev);
    const AssembledPencil p = assemble(mesh);
    const Spectrum s = solve_smallest(p, bc, k, tol, lev);
    t.h.push_back(mesh.max_edge_length());
    t.values.push_back(s.values);
  }
  const std::size_t L = levels.size();
  t.observed_order.assign(k, std::numeric_limits<double>::quiet_NaN());
  t.extrapolated.assign(k, 0.0);
  for (int j = 0; j < k; ++j) {
    const double a = t.values[L - 1][j], b = t.values[L - 2][j];
    double order = 2.0;
    if (L >= 3) {
      const double c = t.values[L - 3][j];
      const double num = c - b, den = b - a;
      const double ratio = t.h[L - 2] / t.h[L - 1];
      if (num > 0 && den > 0 && ratio > 1) {
        order = std::log(num / den) / std::log(ratio);
        t.observed_order[j] = order;
      }
    }
    const double r = std::pow(t.h[L - 2] / t.h[L - 1], order);
    t.extrapolated[j] = a - (b - a) / (r - 1.0);
  }
  return t;
}

}  // namespace polya::fem
