#pragma once

// Counting functions and verdicts for the Pólya, Li-Yau, Kröger,
// Friedlander and Faber-Krahn inequalities and for the Weyl ratio.

#include <string>
#include <vector>

#include "polya/provenance.hpp"
#include "polya/spectrum.hpp"

namespace polya::inequality {

using spectra::Bc;
using spectra::Spectrum;

struct CountBracket {
  std::size_t count = 0;  // #{values < lambda}
  // #{values - errors < lambda}. For FEM spectra the true count lies in
  // [count, upper]; for exact spectra both agree.
  std::size_t upper = 0;
  bool complete = true;  // lambda <= spectrum.complete_below
  // Estimated spectra only: the widened bound of the last computed value is
  // still below lambda, so uncomputed values may also fall below it and
  // `upper` is not an upper bound.
  bool upper_open = false;
};

CountBracket counting_function(const Spectrum& s, double lambda);

enum class Side { dirichlet_upper, neumann_lower };

struct CheckRecord {
  double at = 0.0;  // lambda, or k for index-based checks
  double lhs = 0.0;
  double rhs = 0.0;
  // rhs - lhs for "<=" checks, lhs - rhs for ">=" checks, after widening.
  double margin = 0.0;
  bool caveat = false;    // relies on unverified discretization error
  bool equality = false;  // lhs == rhs (recorded, not judged)
  bool pass = false;
  // Failed, but the FEM bracket cannot rule out a pass: the discretization
  // is too coarse to decide. Never set for exact data.
  bool inconclusive = false;
  Provenance lhs_provenance;
  Provenance rhs_provenance;
};

struct InequalityReport {
  std::string tag;
  std::string relation;  // "<=", ">=" or "<"
  std::vector<CheckRecord> records;
  bool pass = true;
  bool any_caveat = false;
  std::size_t equality_cases = 0;
  std::size_t violations = 0;    // failed records that are decisive
  std::size_t inconclusive = 0;  // failed records flagged inconclusive

  void finalize();
};

InequalityReport check_polya(const Spectrum& s, Side side, const std::vector<double>& lambdas);

// Li-Yau for Dirichlet spectra, Kröger for Neumann spectra.
InequalityReport check_li_yau_kroger(const Spectrum& s, const std::vector<double>& lambdas);

double li_yau_constant(int d);
double kroger_constant(int d);

// mu_{k+1} <= lambda_k for k = 1..k_max (strict when d >= 2 and exact).
InequalityReport check_friedlander(const Spectrum& dir, const Spectrum& neu, int k_max);

// lambda_1 >= first Dirichlet eigenvalue of the disk of equal area (d = 2).
InequalityReport check_faber_krahn(const Spectrum& dir, double measure);

struct WeylRow {
  double lambda = 0.0;
  std::size_t count = 0;
  double weyl = 0.0;
  double ratio = 0.0;
};

struct WeylRatioTable {
  std::vector<WeylRow> rows;
  double band_lo = 1.0;
  double band_hi = 1.05;
  bool final_in_band = false;
  bool deviation_decreasing = false;
  bool pass = false;
};

WeylRatioTable check_weyl_ratio(const Spectrum& s, const std::vector<double>& lambdas,
                                double band_lo = 1.0, double band_hi = 1.05);

}  // namespace polya::inequality
