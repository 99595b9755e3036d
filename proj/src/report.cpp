#include "polya/report.hpp"

#include <algorithm>

namespace polya::report {
namespace {

using io::format_number;

const Provenance kArith = Provenance::arithmetic();
const Provenance kExact = Provenance::exact();

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string s;
  for (const auto& c : cells) {
    if (!s.empty()) s += ',';
    s += c;
  }
  return s + '\n';
}

std::string count_str(std::size_t n) { return std::to_string(n); }

}  // namespace

json tagged(double v, const Provenance& p) { return json{{"value", v}, {"provenance", p.tag()}}; }

Provenance derived(const Provenance& a, const Provenance& b) {
  if (a.kind == Provenance::Kind::fem || b.kind == Provenance::Kind::fem) {
    const double err = std::max(a.kind == Provenance::Kind::fem ? a.error : 0.0,
                                b.kind == Provenance::Kind::fem ? b.error : 0.0);
    return Provenance::fem(std::max(a.level, b.level), err);
  }
  return kArith;
}

json spectrum_json(const spectra::Spectrum& s) {
  json j;
  j["bc"] = spectra::bc_name(s.bc);
  j["method"] = s.is_exact() ? "exact" : "fem";
  j["dim"] = s.dim;
  j["domain_measure"] = tagged(s.domain_measure, s.is_exact() ? kExact : Provenance::fem(s.fem_level, 0.0));
  j["complete_below"] = std::isfinite(s.complete_below) ? json(s.complete_below) : json("inf");
  if (!s.is_exact()) {
    j["fem_level"] = s.fem_level;
    j["discretization_estimated"] = s.discretization_estimated;
  }
  json vals = json::array();
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Provenance p = s.is_exact() ? kExact : Provenance::fem(s.fem_level, s.errors[k]);
    vals.push_back(json{{"index", k + 1}, {"eigenvalue", tagged(s.values[k], p)},
                        {"error_bound", tagged(s.errors[k], s.is_exact() ? kExact : kArith)}});
  }
  j["values"] = vals;
  return j;
}

json inequality_json(const inequality::InequalityReport& r) {
  json j;
  j["check"] = r.tag;
  j["relation"] = r.relation;
  const char* at = r.tag == "friedlander" ? "k" : (r.tag == "faber-krahn" ? "index" : "lambda");
  json recs = json::array();
  for (const auto& c : r.records) {
    json x;
    x[at] = tagged(c.at, kExact);
    x["lhs"] = tagged(c.lhs, c.lhs_provenance);
    x["rhs"] = tagged(c.rhs, c.rhs_provenance);
    x["margin"] = tagged(c.margin, derived(c.lhs_provenance, c.rhs_provenance));
    x["pass"] = c.pass;
    x["inconclusive"] = c.inconclusive;
    x["caveat"] = c.caveat;
    x["equality"] = c.equality;
    recs.push_back(x);
  }
  j["records"] = recs;
  j["summary"] = json{{"records", r.records.size()},
                      {"violations", r.violations},
                      {"inconclusive", r.inconclusive},
                      {"equality_cases", r.equality_cases},
                      {"caveat", r.any_caveat}};
  j["verdict"] = r.pass ? "pass" : (r.violations ? "fail" : "inconclusive");
  return j;
}

json weyl_json(const inequality::WeylRatioTable& t, const Provenance& counts) {
  json j;
  j["check"] = "weyl";
  j["band"] = {t.band_lo, t.band_hi};
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back(json{{"lambda", tagged(r.lambda, kExact)},
                        {"count", tagged(static_cast<double>(r.count), counts)},
                        {"weyl_term", tagged(r.weyl, kArith)},
                        {"ratio", tagged(r.ratio, derived(counts, kArith))}});
  j["rows"] = rows;
  j["final_in_band"] = t.final_in_band;
  j["deviation_decreasing"] = t.deviation_decreasing;
  j["verdict"] = t.pass ? "pass" : "fail";
  return j;
}

json convergence_json(const fem::ConvergenceTable& t) {
  json j;
  json levels = json::array();
  for (std::size_t i = 0; i < t.levels.size(); ++i) {
    json vals = json::array();
    for (double v : t.values[i]) vals.push_back(tagged(v, Provenance::fem(t.levels[i], 0.0)));
    levels.push_back(json{{"level", t.levels[i]}, {"h", tagged(t.h[i], kArith)}, {"eigenvalues", vals}});
  }
  j["levels"] = levels;
  json modes = json::array();
  for (std::size_t k = 0; k < t.extrapolated.size(); ++k) {
    const double p = t.observed_order[k];
    modes.push_back(json{{"mode", k + 1},
                         {"observed_order", std::isfinite(p) ? tagged(p, kArith) : json(nullptr)},
                         {"extrapolated", tagged(t.extrapolated[k], kArith)}});
  }
  j["modes"] = modes;
  return j;
}

json proof_json(const prover::ProofReport& r) {
  json j;
  j["prototile"] = r.prototile;
  j["lambda"] = tagged(r.lambda, kExact);
  j["dim"] = r.d;
  j["measure"] = tagged(r.measure, kExact);
  j["R"] = tagged(r.R, kExact);
  j["N_self"] = tagged(static_cast<double>(r.n_self), r.count_provenance);
  j["N_inflated"] = tagged(static_cast<double>(r.n_inflated), r.count_provenance);
  j["fem_caveat"] = r.fem_caveat;
  json rows = json::array();
  const Provenance bp = derived(r.count_provenance, kArith);
  for (const auto& row : r.rows) {
    json x;
    x["L"] = tagged(row.L, kExact);
    x["defect"] = tagged(row.defect, kArith);
    x["weyl_term"] = tagged(row.weyl, kArith);
    x["lower_bound"] = tagged(row.lower_bound, bp);
    x["N_self"] = tagged(static_cast<double>(row.n_self), r.count_provenance);
    x["holds"] = static_cast<double>(row.n_self) >= row.lower_bound;
    if (row.index_bounds) {
      const auto& b = *row.index_bounds;
      x["index_sets"] = json{{"count_I", tagged(static_cast<double>(b.count_I), kExact)},
                             {"bound_I", tagged(b.bound_I, kArith)},
                             {"count_K", tagged(static_cast<double>(b.count_K), kExact)},
                             {"bound_K", tagged(b.bound_K, kArith)}};
    } else if (row.cube_term) {
      x["index_sets"] = "violated";
    }
    if (row.cube_term) {
      x["cube_term"] = tagged(*row.cube_term, kArith);
      x["copy_sum"] = tagged(*row.copy_sum, bp);
      x["cube_check"] = row.cube_check;
    }
    rows.push_back(x);
  }
  j["rows"] = rows;
  j["monotone"] = r.monotone;
  j["final_holds"] = r.final_holds;
  j["index_bounds_ok"] = r.index_bounds_ok;
  j["cube_checks_ok"] = r.cube_checks_ok;
  j["verdict"] = r.pass ? "pass" : "fail";
  return j;
}

json extension_json(const extension::ExtensionCheck& c) {
  json j;
  j["dim"] = c.dim;
  j["h"] = c.h;
  j["L"] = c.L;
  j["R"] = c.R;
  j["original"] = tagged(c.original, kArith);
  j["extended"] = tagged(c.extended, kArith);
  j["bound"] = tagged(c.bound, kArith);
  j["slack"] = tagged(c.slack, kArith);
  j["ratio"] = tagged(c.ratio, kArith);
  j["within_bound"] = c.within_bound;
  j["within_slack"] = c.within_slack;
  j["restriction_exact"] = c.restriction_exact;
  j["warning"] = c.warning;
  j["verdict"] = c.pass ? "pass" : "fail";
  return j;
}

json verdict_json(const tiling::TilingVerdict& v) {
  json j;
  json w = json::array();
  for (const auto& s : v.coverage.window.sides) w.push_back({s.lo, s.hi});
  j["window"] = w;
  j["resolution"] = v.coverage.resolution;
  j["samples"] = v.coverage.samples;
  j["covered_fraction"] = tagged(v.coverage.covered_fraction, kArith);
  j["overlap_fraction"] = tagged(v.coverage.overlap_fraction, kArith);
  j["uncovered_threshold"] = tagged(v.uncovered_threshold, kArith);
  j["overlap_threshold"] = tagged(v.overlap_threshold, kArith);
  j["perimeter_estimate"] = tagged(v.perimeter_estimate, kArith);
  j["max_multiplicity"] = v.coverage.max_multiplicity;
  j["structure_ok"] = v.structure_ok;
  if (!v.structure_note.empty()) j["structure_note"] = v.structure_note;
  j["verdict"] = v.pass ? "pass" : "fail";
  return j;
}

std::string spectrum_csv(const spectra::Spectrum& s) {
  std::string out = "index,eigenvalue,error_bound\n";
  for (std::size_t k = 0; k < s.size(); ++k)
    out += csv_row({count_str(k + 1), format_number(s.values[k]), format_number(s.errors[k])});
  return out;
}

std::string count_csv(const spectra::Spectrum& s, const std::vector<double>& lambdas) {
  std::string out = "lambda,count,upper,weyl_term\n";
  for (double l : lambdas) {
    const auto c = inequality::counting_function(s, l);
    out += csv_row({format_number(l), count_str(c.count), c.upper_open ? "inf" : count_str(c.upper),
                    format_number(spectra::weyl_term(l, s.domain_measure, s.dim))});
  }
  return out;
}

std::string convergence_csv(const fem::ConvergenceTable& t) {
  std::string out = "level,h";
  const std::size_t k = t.values.empty() ? 0 : t.values.front().size();
  for (std::size_t i = 1; i <= k; ++i) out += ",eig_" + std::to_string(i);
  out += '\n';
  for (std::size_t i = 0; i < t.levels.size(); ++i) {
    out += std::to_string(t.levels[i]) + ',' + format_number(t.h[i]);
    for (double v : t.values[i]) out += ',' + format_number(v);
    out += '\n';
  }
  return out;
}

std::string proof_csv(const prover::ProofReport& r) {
  std::string out = "L,defect,lower_bound,weyl_term,N_self\n";
  for (const auto& row : r.rows)
    out += csv_row({format_number(row.L), format_number(row.defect), format_number(row.lower_bound),
                    format_number(row.weyl), count_str(row.n_self)});
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace polya::report
