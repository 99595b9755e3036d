#pragma once

// JSON reports and CSV plot data. Every numeric result in a report is an
// object {"value": v, "provenance": "exact" | "fem(level, error)" |
// "arithmetic"}; inputs echoed under "config" are plain.
//
// CSV layouts (header row first, columns in this order):
//   spectrum     index,eigenvalue,error_bound          (index from 1)
//   count        lambda,count,upper,weyl_term
//   convergence  level,h,eig_1,...,eig_k
//   proof        L,defect,lower_bound,weyl_term,N_self

#include <string>

#include "polya/extension.hpp"
#include "polya/fem.hpp"
#include "polya/inequality.hpp"
#include "polya/io.hpp"
#include "polya/prover.hpp"
#include "polya/tiling.hpp"

namespace polya::report {

using io::json;

json tagged(double v, const Provenance& p);

// Provenance of a number computed from two others: fem if either is fem
// (largest error, finest level), arithmetic otherwise.
Provenance derived(const Provenance& a, const Provenance& b);

json spectrum_json(const spectra::Spectrum& s);
json inequality_json(const inequality::InequalityReport& r);
json weyl_json(const inequality::WeylRatioTable& t, const Provenance& counts);
json convergence_json(const fem::ConvergenceTable& t);
json proof_json(const prover::ProofReport& r);
json extension_json(const extension::ExtensionCheck& c);
json verdict_json(const tiling::TilingVerdict& v);

std::string spectrum_csv(const spectra::Spectrum& s);
std::string count_csv(const spectra::Spectrum& s, const std::vector<double>& lambdas);
std::string convergence_csv(const fem::ConvergenceTable& t);
std::string proof_csv(const prover::ProofReport& r);

// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

}  // namespace polya::report
