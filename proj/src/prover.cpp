#include "polya/prover.hpp"

#include <algorithm>
#include <cmath>

#include "polya/error.hpp"
#include "polya/fem.hpp"
#include "polya/parallel.hpp"

namespace polya::prover {
namespace {

struct SelfCounts {
  std::size_t n_self = 0, n_inflated = 0;
  Provenance prov;
  bool fem = false;
};

SelfCounts prototile_counts(const Domain& proto, double lambda, int d, const ProofOptions& opt) {
  const double big = std::pow(2.0, d) * (lambda + 1.0);
  const double reach = big * (1 + 1e-12);
  spectra::Spectrum s;
  SelfCounts c;
  if (auto e = spectra::exact_spectrum(proto, spectra::Bc::neumann, reach)) {
    s = *e;
  } else {
    // Raw discrete counts under-count, which only weakens the bound.
    s = fem::fem_spectrum_below(proto, spectra::Bc::neumann, opt.refinement, reach, opt.tol);
    c.fem = true;
  }
  c.n_self = inequality::counting_function(s, lambda).count;
  c.n_inflated = inequality::counting_function(s, big).count;
  c.prov = provenance_of(s);
  return c;
}

}  // namespace

inequality::InequalityReport check_bracketing(const Piece& whole, const std::vector<Piece>& parts,
                                              const std::vector<double>& lambdas) {
  if (parts.empty()) throw InputError("bracketing: no parts");
  if (lambdas.empty()) throw InputError("bracketing: empty lambda grid");
  const double mw = geometry::measure(whole.domain);
  double mp = 0.0;
  for (const auto& p : parts) {
    if (p.domain.dim() != whole.domain.dim()) throw InputError("bracketing: dimension mismatch");
    if (p.spectrum.bc != spectra::Bc::neumann) throw InputError("bracketing: Neumann spectra required");
    mp += geometry::measure(p.domain);
  }
  if (whole.spectrum.bc != spectra::Bc::neumann) throw InputError("bracketing: Neumann spectra required");
  if (std::abs(mp - mw) > 1e-9 * std::max(1.0, mw))
    throw InputError("bracketing: part measures sum to " + std::to_string(mp) + ", whole has " +
                     std::to_string(mw));
  inequality::InequalityReport r;
  r.tag = "bracketing";
  r.relation = "<=";
  for (double l : lambdas) {
    const auto w = inequality::counting_function(whole.spectrum, l);
    const double wreach = whole.spectrum.is_exact() || whole.spectrum.discretization_estimated
                              ? 0.0
                              : provenance_of(whole.spectrum).error;
    if (l + wreach > whole.spectrum.complete_below)
      throw InputError("bracketing: whole spectrum incomplete at lambda = " + std::to_string(l));
    std::size_t sum = 0;
    bool exact_parts = true;
    for (const auto& p : parts) {
      const auto c = inequality::counting_function(p.spectrum, l);
      if (!c.complete) throw InputError("bracketing: part spectrum incomplete at lambda = " + std::to_string(l));
      sum += c.count;
      exact_parts = exact_parts && p.spectrum.is_exact();
    }
    inequality::CheckRecord rec;
    rec.at = l;
    rec.lhs = static_cast<double>(w.count);
    rec.rhs = static_cast<double>(sum);
    rec.lhs_provenance = provenance_of(whole.spectrum);
    rec.rhs_provenance = exact_parts ? Provenance::exact() : provenance_of(parts.front().spectrum);
    rec.margin = rec.rhs - static_cast<double>(w.upper);
    rec.caveat = !whole.spectrum.is_exact();
    rec.equality = rec.lhs == rec.rhs;
    rec.pass = rec.margin >= 0 && !w.upper_open;
    if (!rec.pass) rec.inconclusive = !(exact_parts && rec.lhs > rec.rhs);
    r.records.push_back(rec);
  }
  r.finalize();
  return r;
}

double defect(double L, double R, int d) {
  if (!(L > 2 * R)) throw InputError("defect: need L > 2R");
  return (std::pow(L + R, d) - std::pow(L - 2 * R, d)) / std::pow(L, d);
}

LowerBound proof_lower_bound(double lambda, double measure, double R, int d, std::size_t n_self,
                             std::size_t n_inflated, double L) {
  if (!(lambda > 0)) throw InputError("proof bound: lambda must be positive");
  if (!(R > 0)) throw InputError("proof bound: R must be positive");
  LowerBound b;
  b.weyl = spectra::weyl_term(lambda, measure, d);
  b.defect = defect(L, R, d);
  b.bound = b.weyl - b.defect * static_cast<double>(n_inflated);
  b.holds = static_cast<double>(n_self) >= b.bound;
  return b;
}

ProofReport proof_report(const tiling::Tiling& t, double lambda, std::vector<double> Ls, const ProofOptions& opt) {
  if (!(lambda > 0)) throw InputError("prove: lambda must be positive");
  if (Ls.empty()) throw InputError("prove: empty L list");
  std::sort(Ls.begin(), Ls.end());
  Ls.erase(std::unique(Ls.begin(), Ls.end()), Ls.end());

  ProofReport rep;
  rep.prototile = t.shape ? tiling::shape_name(*t.shape) : "custom";
  rep.lambda = lambda;
  rep.d = t.prototile.dim();
  rep.measure = geometry::measure(t.prototile);
  rep.R = geometry::diameter(t.prototile);
  for (double L : Ls)
    if (!(L > 2 * rep.R)) throw InputError("prove: every L must exceed 2R = " + std::to_string(2 * rep.R));

  const SelfCounts c = prototile_counts(t.prototile, lambda, rep.d, opt);
  rep.n_self = c.n_self;
  rep.n_inflated = c.n_inflated;
  rep.count_provenance = c.prov;
  rep.fem_caveat = c.fem;

  rep.rows.resize(Ls.size());
  parallel_for(Ls.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const double L = Ls[i];
      ProofRow& row = rep.rows[i];
      const LowerBound lb = proof_lower_bound(lambda, rep.measure, rep.R, rep.d, c.n_self, c.n_inflated, L);
      row.L = L;
      row.defect = lb.defect;
      row.lower_bound = lb.bound;
      row.weyl = lb.weyl;
      row.n_self = c.n_self;
      if (L > kEnumerationCap || !t.shape) continue;
      const tiling::Tiling big = tiling::generate_tiling(*t.shape, t.scale, tiling::index_window(L, rep.R));
      const tiling::IndexSets is = tiling::index_sets(big, L);
      try {
        row.index_bounds = tiling::index_set_bounds(is, rep.measure, rep.d);
      } catch (const BoundViolation&) {
        row.index_bounds.reset();
      }
      row.cube_term = spectra::cube_lower_bound(lambda, L, rep.d);
      row.copy_sum = static_cast<double>(is.I.size()) * static_cast<double>(c.n_self) +
                     static_cast<double>(is.K.size()) * static_cast<double>(c.n_inflated);
      row.cube_check = *row.cube_term <= *row.copy_sum;
    }
  });

  rep.monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].lower_bound < rep.rows[i - 1].lower_bound) rep.monotone = false;
  for (const auto& row : rep.rows) {
    if (row.L <= kEnumerationCap && t.shape && !row.index_bounds) rep.index_bounds_ok = false;
    if (!row.cube_check) rep.cube_checks_ok = false;
  }
  rep.final_holds = static_cast<double>(rep.n_self) >= rep.rows.back().lower_bound;
  rep.pass = rep.monotone && rep.final_holds && rep.index_bounds_ok && rep.cube_checks_ok;
  return rep;
}

ProofReport proof_report(tiling::Shape shape, double lambda, std::vector<double> Ls, const ProofOptions& opt) {
  const tiling::Tiling t = tiling::generate_tiling(shape, 1.0, geometry::Box{{{0, 1}, {0, 1}}});
  return proof_report(t, lambda, std::move(Ls), opt);
}

}  // namespace polya::prover
