#pragma once

// Numerical replay of the tiling argument for the Neumann Pólya
// inequality: bracketing over a partition, the lower bound obtained by
// filling (-L, L)^d with copies of the prototile, and its L -> infinity
// behaviour.

#include <optional>
#include <string>
#include <vector>

#include "polya/inequality.hpp"
#include "polya/tiling.hpp"

namespace polya::prover {

using geometry::Domain;
using spectra::Spectrum;

struct Piece {
  Domain domain;
  Spectrum spectrum;  // Neumann
};

// N_N(lambda, whole) <= sum_j N_N(lambda, parts_j). Part measures must add
// up to the whole within 1e-9 (relative).
inequality::InequalityReport check_bracketing(const Piece& whole, const std::vector<Piece>& parts,
                                              const std::vector<double>& lambdas);

// ((L+R)^d - (L-2R)^d) / L^d
double defect(double L, double R, int d);

struct LowerBound {
  double weyl = 0.0;
  double defect = 0.0;
  double bound = 0.0;  // weyl - defect * n_inflated
  bool holds = false;  // n_self >= bound
};

LowerBound proof_lower_bound(double lambda, double measure, double R, int d, std::size_t n_self,
                             std::size_t n_inflated, double L);

struct ProofRow {
  double L = 0.0;
  double defect = 0.0;
  double lower_bound = 0.0;
  double weyl = 0.0;
  std::size_t n_self = 0;
  // Enumeration-backed checks, present only for L <= kEnumerationCap.
  std::optional<tiling::IndexSetBounds> index_bounds;
  std::optional<double> cube_term;     // omega_d pi^{-d} L^d lambda^{d/2}
  std::optional<double> copy_sum;      // #I N(lambda) + #K N(2^d (lambda + 1))
  bool cube_check = true;              // cube_term <= copy_sum
};

inline constexpr double kEnumerationCap = 64.0;

struct ProofReport {
  std::string prototile;
  double lambda = 0.0;
  int d = 2;
  double measure = 0.0;
  double R = 0.0;
  std::size_t n_self = 0;
  std::size_t n_inflated = 0;
  Provenance count_provenance;
  bool fem_caveat = false;
  std::vector<ProofRow> rows;  // sorted by L
  bool monotone = false;       // lower bound nondecreasing in L
  bool final_holds = false;    // n_self >= bound(L_max)
  bool index_bounds_ok = true;
  bool cube_checks_ok = true;
  bool pass = false;
};

struct ProofOptions {
  int refinement = 4;
  double tol = 1e-8;
};

ProofReport proof_report(const tiling::Tiling& t, double lambda, std::vector<double> Ls,
                         const ProofOptions& opt = {});

// Convenience: catalog tiling of the given shape at scale 1.
ProofReport proof_report(tiling::Shape shape, double lambda, std::vector<double> Ls,
                         const ProofOptions& opt = {});

}  // namespace polya::prover
