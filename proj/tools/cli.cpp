#include "polya/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "polya/error.hpp"
#include "polya/extension.hpp"
#include "polya/fem.hpp"
#include "polya/inequality.hpp"
#include "polya/io.hpp"
#include "polya/prover.hpp"
#include "polya/report.hpp"
#include "polya/tiling.hpp"

namespace polya::cli {
namespace {

using geometry::Domain;
using io::json;
using spectra::Bc;
using spectra::Spectrum;

double parse_double(const std::string& s) {
  // Accepts plain numbers and simple fractions such as 1/128.
  const auto slash = s.find('/');
  if (slash != std::string::npos) return parse_double(s.substr(0, slash)) / parse_double(s.substr(slash + 1));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("not a number: \"" + s + "\"");
  }
  if (used != s.size()) throw InputError("not a number: \"" + s + "\"");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

// Options shared by the spectral subcommands.
struct Common {
  std::string domain;
  std::string bc = "neumann";
  std::string lambda;
  double lambda_max = 0.0;
  int k = 0;
  int refine = 4;
  double tol = fem::kDefaultTol;
  std::string method = "auto";
  std::string out;
  std::string plot;
};

// Everything a subcommand produces; written once after it returns.
struct Job {
  std::string command;
  json config = json::object();
  json result = json::object();
  std::string csv;  // plot data, if the command has any
  std::vector<std::pair<std::filesystem::path, std::string>> files;
  std::vector<std::string> summary;
  int code = kPass;
};

json common_config(const Common& c) {
  json j;
  if (!c.domain.empty()) j["domain"] = c.domain;
  j["bc"] = c.bc;
  j["method"] = c.method;
  j["refine"] = c.refine;
  j["tol"] = c.tol;
  return j;
}

Domain load_domain(const Common& c) {
  if (c.domain.empty()) throw InputError("--domain is required");
  return io::load_domain(c.domain);
}

void check_common(const Common& c) {
  if (c.refine < 0) throw InputError("--refine must be nonnegative");
  if (!(c.tol > 0)) throw InputError("--tol must be positive");
  if (c.method != "auto" && c.method != "exact" && c.method != "fem")
    throw InputError("--method must be auto, exact or fem");
}

// Exact when available (and allowed), else FEM. `widened` selects the
// Richardson-widened error bounds needed by upper-bound checks.
Spectrum spectrum_below(const Domain& d, Bc bc, double lmax, const Common& c, bool widened) {
  if (c.method != "fem")
    if (auto e = spectra::exact_spectrum(d, bc, lmax)) return *e;
  if (c.method == "exact") throw InputError("no closed-form spectrum for this domain (try --method fem)");
  if (widened) return fem::fem_spectrum_estimated(d, bc, c.refine, lmax, c.tol);
  return fem::fem_spectrum_below(d, bc, c.refine, lmax, c.tol);
}

// For widened counts at lambda <= lmax.
Spectrum spectrum_covering(const Domain& d, Bc bc, double lmax, const Common& c) {
  if (c.method != "fem")
    if (auto e = spectra::exact_spectrum(d, bc, 1.25 * lmax + 1.0)) return *e;
  if (c.method == "exact") throw InputError("no closed-form spectrum for this domain (try --method fem)");
  return fem::fem_spectrum_covering(d, bc, c.refine, lmax, c.tol);
}

// The first k eigenvalues; lambda_max grows from a Weyl-law guess.
Spectrum spectrum_first(const Domain& d, Bc bc, int k, const Common& c, bool widened) {
  if (k < 1) throw InputError("-k must be at least 1");
  const int dim = d.dim();
  const double area = geometry::measure(d);
  double lmax = std::pow(k * std::pow(2 * M_PI, dim) / (spectra::unit_ball_volume(dim) * area), 2.0 / dim);
  lmax = 1.5 * lmax + 10.0;
  for (int tries = 0; tries < 12; ++tries, lmax *= 2) {
    Spectrum s = spectrum_below(d, bc, lmax, c, widened);
    if (static_cast<int>(s.size()) < k) continue;
    if (static_cast<int>(s.size()) > k) {
      s.complete_below = std::min(s.complete_below, s.values[k]);
      s.values.resize(k);
      s.errors.resize(k);
    }
    return s;
  }
  throw SolverError("could not bracket the first " + std::to_string(k) + " eigenvalues");
}

std::vector<double> need_lambda(const Common& c) {
  if (c.lambda.empty()) throw InputError("--lambda is required");
  return parse_lambda_spec(c.lambda);
}

// Routes --out: "csv" or "json" print to stdout; a path ending in .csv gets
// the plot data, any other path the JSON report. --plot always gets CSV.
struct Route {
  std::string report_path;
  bool report_stdout = false;
  bool csv_stdout = false;
};

Route route(Job& job, const std::string& out, const std::string& plot) {
  Route r;
  if (out == "csv") {
    if (job.csv.empty()) throw InputError("this command has no CSV output");
    r.csv_stdout = true;
  } else if (out.empty() || out == "json" || out == "-") {
    r.report_stdout = true;
  } else if (std::filesystem::path(out).extension() == ".csv") {
    if (job.csv.empty()) throw InputError("this command has no CSV output");
    job.files.emplace_back(out, job.csv);
  } else {
    r.report_path = out;
  }
  if (!plot.empty()) {
    if (job.csv.empty()) throw InputError("this command has no plot data");
    job.files.emplace_back(plot, job.csv);
  }
  return r;
}

int finish(Job& job, const Route& r, std::ostream& out, std::ostream& err) {
  json env;
  env["tool"] = "polya-lab";
  env["command"] = job.command;
  env["config"] = job.config;
  env["result"] = job.result;
  env["exit_code"] = job.code;
  const std::string report = report::dump(env);
  if (!r.report_path.empty()) job.files.emplace_back(r.report_path, report);
  for (const auto& [path, bytes] : job.files) io::write_atomic(path, bytes);
  // When stdout carries data, the human summary goes to stderr.
  std::ostream& human = (r.report_stdout || r.csv_stdout) ? err : out;
  for (const auto& line : job.summary) human << line << '\n';
  if (r.report_stdout) out << report;
  if (r.csv_stdout) out << job.csv;
  return job.code;
}

std::string fmt(double v) { return io::format_number(v); }

int exit_for(const inequality::InequalityReport& r) {
  if (r.pass) return kPass;
  return r.violations ? kViolation : kNoConvergence;
}

std::string verdict_line(const std::string& what, const inequality::InequalityReport& r) {
  const char* v = r.pass ? "PASS" : (r.violations ? "FAIL" : "INCONCLUSIVE");
  std::string s = what + ": " + v + " (" + std::to_string(r.records.size()) + " records, " +
                  std::to_string(r.violations) + " violations";
  if (r.inconclusive) s += ", " + std::to_string(r.inconclusive) + " inconclusive (refine further)";
  if (r.equality_cases) s += ", " + std::to_string(r.equality_cases) + " equality cases";
  s += ")";
  if (r.any_caveat) s += " [caveat: relies on estimated discretization error]";
  return s;
}

// ---- subcommands ----

void cmd_spectrum(Job& job, const Common& c) {
  check_common(c);
  const Domain d = load_domain(c);
  const Bc bc = spectra::parse_bc(c.bc);
  if ((c.k > 0) == (c.lambda_max > 0)) throw InputError("give exactly one of --lambda-max and -k");
  const Spectrum s = c.k > 0 ? spectrum_first(d, bc, c.k, c, true) : spectrum_below(d, bc, c.lambda_max, c, true);
  job.config = common_config(c);
  if (c.k > 0) job.config["k"] = c.k;
  else job.config["lambda_max"] = c.lambda_max;
  job.result = report::spectrum_json(s);
  job.csv = report::spectrum_csv(s);
  job.summary.push_back("spectrum: " + std::to_string(s.size()) + " " + spectra::bc_name(bc) + " eigenvalues (" +
                        provenance_of(s).tag() + ")");
  if (!s.values.empty()) job.summary.push_back("  first " + fmt(s.values.front()) + ", last " + fmt(s.values.back()));
}

void cmd_count(Job& job, const Common& c) {
  check_common(c);
  const Domain d = load_domain(c);
  const Bc bc = spectra::parse_bc(c.bc);
  const auto lams = need_lambda(c);
  const Spectrum s = spectrum_covering(d, bc, lams.back(), c);
  job.config = common_config(c);
  job.config["lambda"] = c.lambda;
  const Provenance p = provenance_of(s);
  json rows = json::array();
  for (double l : lams) {
    const auto n = inequality::counting_function(s, l);
    if (!n.complete) throw InputError("spectrum incomplete at lambda = " + fmt(l));
    rows.push_back(json{{"lambda", report::tagged(l, Provenance::exact())},
                        {"count", report::tagged(static_cast<double>(n.count), p)},
                        {"upper", n.upper_open ? json("open") : report::tagged(static_cast<double>(n.upper), p)},
                        {"weyl_term", report::tagged(spectra::weyl_term(l, s.domain_measure, s.dim),
                                                     Provenance::arithmetic())}});
  }
  job.result["counts"] = rows;
  job.csv = report::count_csv(s, lams);
  job.summary.push_back("count: " + std::to_string(lams.size()) + " lambda values (" + p.tag() + ")");
}

void cmd_check_weyl_type(Job& job, const Common& c, const std::string& which) {
  check_common(c);
  const Domain d = load_domain(c);
  const auto lams = need_lambda(c);
  const bool dirichlet = which == "polya-dirichlet" || which == "li-yau";
  const Bc bc = dirichlet ? Bc::dirichlet : Bc::neumann;
  const Spectrum s = spectrum_covering(d, bc, lams.back(), c);
  inequality::InequalityReport r;
  if (which == "polya-dirichlet") r = inequality::check_polya(s, inequality::Side::dirichlet_upper, lams);
  else if (which == "polya-neumann") r = inequality::check_polya(s, inequality::Side::neumann_lower, lams);
  else r = inequality::check_li_yau_kroger(s, lams);
  job.config = common_config(c);
  job.config["bc"] = spectra::bc_name(bc);
  job.config["lambda"] = c.lambda;
  job.result = report::inequality_json(r);
  job.result["spectrum_provenance"] = provenance_of(s).tag();
  job.code = exit_for(r);
  job.summary.push_back(verdict_line(which, r));
}

void cmd_check_friedlander(Job& job, const Common& c, int kmax) {
  check_common(c);
  const Domain d = load_domain(c);
  if (kmax < 1) throw InputError("-k must be at least 1");
  const Spectrum dir = spectrum_first(d, Bc::dirichlet, kmax, c, true);
  // Generous range so a missing mu_{k+1} signals a violation, not truncation.
  const double lmax = 2.0 * dir.values.back() + 10.0;
  Spectrum neu = spectrum_below(d, Bc::neumann, lmax, c, false);
  job.config = common_config(c);
  job.config.erase("bc");
  job.config["k"] = kmax;
  if (static_cast<int>(neu.size()) < kmax + 1) {
    // FEM Neumann values sit above the true ones, so only exact data decide.
    const bool decisive = neu.is_exact() && dir.is_exact();
    job.code = decisive ? kViolation : kNoConvergence;
    job.result["verdict"] = decisive ? "fail" : "inconclusive";
    job.result["note"] = "fewer than k+1 Neumann eigenvalues below 2 lambda_k + 10";
    job.summary.push_back(std::string("friedlander: ") + (decisive ? "FAIL" : "INCONCLUSIVE") +
                          " (missing Neumann eigenvalues)");
    return;
  }
  const auto r = inequality::check_friedlander(dir, neu, kmax);
  job.result = report::inequality_json(r);
  job.code = exit_for(r);
  job.summary.push_back(verdict_line("friedlander", r));
}

void cmd_check_faber_krahn(Job& job, const Common& c) {
  check_common(c);
  const Domain d = load_domain(c);
  const Spectrum dir = spectrum_first(d, Bc::dirichlet, 1, c, true);
  const auto r = inequality::check_faber_krahn(dir, geometry::measure(d));
  job.config = common_config(c);
  job.config.erase("bc");
  job.result = report::inequality_json(r);
  job.code = exit_for(r);
  job.summary.push_back(verdict_line("faber-krahn", r));
}

void cmd_check_weyl(Job& job, const Common& c, double lo, double hi) {
  check_common(c);
  const Domain d = load_domain(c);
  const Bc bc = spectra::parse_bc(c.bc);
  const auto lams = parse_lambda_spec(c.lambda.empty() ? "100,1000,10000" : c.lambda);
  auto s = spectra::exact_spectrum(d, bc, lams.back());
  if (!s) throw InputError("weyl: needs a domain with a closed-form spectrum");
  const auto t = inequality::check_weyl_ratio(*s, lams, lo, hi);
  job.config = common_config(c);
  job.config["lambda"] = c.lambda.empty() ? "100,1000,10000" : c.lambda;
  job.config["band"] = {lo, hi};
  job.result = report::weyl_json(t, Provenance::exact());
  job.code = t.pass ? kPass : kViolation;
  job.summary.push_back(std::string("weyl: ") + (t.pass ? "PASS" : "FAIL") + ", ratio at lambda = " +
                        fmt(t.rows.back().lambda) + " is " + fmt(t.rows.back().ratio));
}

struct TileOpts {
  std::string shape;
  double scale = 1.0;
  std::string window = "-4,4";
  std::string file;
  int resolution = 1024;
  std::string out;
};

geometry::Box parse_window(const std::string& s) {
  const auto v = parse_number_list(s);
  if (v.size() == 2) return geometry::Box{{{v[0], v[1]}, {v[0], v[1]}}};
  if (v.size() == 4) return geometry::Box{{{v[0], v[1]}, {v[2], v[3]}}};
  throw InputError("--window takes a,b or a,b,c,d");
}

void cmd_tile_generate(Job& job, const TileOpts& o, std::ostream& out) {
  if (o.shape.empty()) throw InputError("--shape is required");
  const auto t = tiling::generate_tiling(tiling::parse_shape(o.shape), o.scale, parse_window(o.window));
  const std::string text = report::dump(io::tiling_to_json(t));
  if (o.out.empty() || o.out == "-") out << text;
  else job.files.emplace_back(o.out, text);
  job.summary.push_back("tile generate: " + std::to_string(t.placements.size()) + " copies of " + o.shape +
                        " (" + tiling::kind_name(t.kind) + ")");
}

void cmd_tile_validate(Job& job, const TileOpts& o) {
  if (o.file.empty()) throw InputError("tile validate needs a tiling file");
  if (o.resolution < 2) throw InputError("--resolution must be at least 2");
  const auto t = io::load_tiling(o.file);
  const geometry::Box w = o.window.empty() ? t.window : parse_window(o.window);
  const auto v = tiling::validate_tiling(t, w, o.resolution);
  job.config = json{{"tiling", o.file}, {"resolution", o.resolution}, {"sampling", "cell-centred regular grid"}};
  job.result = report::verdict_json(v);
  job.code = v.pass ? kPass : kViolation;
  job.summary.push_back(std::string("tile validate: ") + (v.pass ? "PASS" : "FAIL") + " (uncovered " +
                        fmt(1.0 - v.coverage.covered_fraction) + ", overlap " + fmt(v.coverage.overlap_fraction) +
                        ")");
  if (!v.structure_ok) job.summary.push_back("  " + v.structure_note);
}

struct ExtOpts {
  int d = 2;
  double L = 1.0;
  double R = 0.5;
  std::string h = "1/128";
  int trials = 200;
  std::uint64_t seed = 7;
  bool holes = false;
  std::string field = "random";
  std::string dump;
  // transfer
  std::string inner, outer, lambda;
  double bound = 0.0;
};

void cmd_extension_check(Job& job, const ExtOpts& o) {
  const double h = parse_double(o.h);
  if (o.trials < 1) throw InputError("--trials must be at least 1");
  if (o.field != "random" && o.field != "linear" && o.field != "constant")
    throw InputError("--field must be random, linear or constant");
  job.config = json{{"d", o.d}, {"L", o.L},           {"R", o.R},         {"h", h},
                    {"field", o.field}, {"trials", o.trials}, {"seed", o.seed}, {"holes", o.holes}};
  const int trials = o.field == "random" ? o.trials : 1;
  job.config["trials"] = trials;
  json rows = json::array();
  int failures = 0, warnings = 0;
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
    extension::GridField f;
    if (o.field == "random") {
      f = extension::random_trig_field(o.d, h, o.L, o.R, seed, o.holes && i % 2 == 1);
    } else {
      const bool lin = o.field == "linear";
      f = extension::make_field(o.d, h, o.L, [lin](const geometry::Point& x) { return lin ? x(0) : 1.0; });
    }
    const auto c = extension::check_extension_bound(f, o.R);
    if (i == 0 && !o.dump.empty()) {
      io::write_field(o.dump, f);
      io::write_field(o.dump + "-extended", extension::extend_field(f, o.R));
    }
    json row = report::extension_json(c);
    row.erase("dim");
    row.erase("h");
    row.erase("L");
    row.erase("R");
    json t{{"trial", i}};
    if (o.field == "random") t["seed"] = seed;
    t.update(row);
    rows.push_back(t);
    failures += !c.pass;
    warnings += c.warning;
    worst = std::max(worst, c.ratio);
  }
  job.result["trials"] = rows;
  job.result["failures"] = failures;
  job.result["warnings"] = warnings;
  job.result["max_ratio"] = report::tagged(worst, Provenance::arithmetic());
  job.result["ratio_bound"] = std::pow(2.0, o.d);
  job.result["verdict"] = failures == 0 ? "pass" : "fail";
  job.code = failures == 0 ? kPass : kViolation;
  job.summary.push_back(std::string("extension check: ") + (failures ? "FAIL" : "PASS") + " (" +
                        std::to_string(trials) + " fields, " + std::to_string(failures) + " failures, " +
                        std::to_string(warnings) + " within slack only, max ratio " + fmt(worst) + " vs " +
                        fmt(std::pow(2.0, o.d)) + ")");
}

void cmd_extension_transfer(Job& job, const ExtOpts& o, const Common& c) {
  check_common(c);
  if (o.inner.empty() || o.outer.empty()) throw InputError("--inner and --outer are required");
  const Domain in = io::load_domain(o.inner), out = io::load_domain(o.outer);
  const double b = o.bound > 0 ? o.bound : std::pow(2.0, in.dim());
  const auto lams = need_lambda(c);
  const auto r = extension::check_count_transfer(lams, in, out, b, {c.refine, c.tol});
  job.config = json{{"inner", o.inner}, {"outer", o.outer}, {"bound", b}, {"lambda", c.lambda},
                    {"refine", c.refine}, {"tol", c.tol}};
  job.result = report::inequality_json(r);
  job.code = exit_for(r);
  job.summary.push_back(verdict_line("count transfer", r));
}

struct ProveOpts {
  std::string tiling;
  double scale = 1.0;
  double lambda = 0.0;
  std::string Ls = "8,32,1024";
};

void cmd_prove(Job& job, const ProveOpts& o, const Common& c) {
  check_common(c);
  if (o.tiling.empty()) throw InputError("--tiling is required");
  if (!(o.lambda > 0)) throw InputError("--lambda must be positive");
  const auto Ls = parse_number_list(o.Ls);
  tiling::Tiling t = std::filesystem::exists(o.tiling)
                         ? io::load_tiling(o.tiling)
                         : tiling::generate_tiling(tiling::parse_shape(o.tiling), o.scale,
                                                   geometry::Box{{{0, o.scale}, {0, o.scale}}});
  const auto r = prover::proof_report(t, o.lambda, Ls, {c.refine, c.tol});
  job.config = json{{"tiling", o.tiling}, {"scale", o.scale}, {"lambda", o.lambda}, {"L", Ls},
                    {"refine", c.refine}, {"tol", c.tol}};
  job.result = report::proof_json(r);
  job.csv = report::proof_csv(r);
  // Raw FEM counts under-count, so a failed count comparison is not decisive.
  if (r.pass) job.code = kPass;
  else if (r.monotone && r.index_bounds_ok && r.fem_caveat) job.code = kNoConvergence;
  else job.code = kViolation;
  const auto& last = r.rows.back();
  job.summary.push_back(std::string("prove: ") + (r.pass ? "PASS" : "FAIL") + " for " + r.prototile +
                        " at lambda = " + fmt(o.lambda));
  job.summary.push_back("  N_self = " + std::to_string(r.n_self) + " (" + r.count_provenance.tag() +
                        "), bound at L = " + fmt(last.L) + " is " + fmt(last.lower_bound) + ", Weyl term " +
                        fmt(last.weyl));
  if (!r.monotone) job.summary.push_back("  lower bound is not monotone in L");
  if (!r.index_bounds_ok) job.summary.push_back("  index-set bound violated");
  if (!r.cube_checks_ok) job.summary.push_back("  cube count check failed");
}

void cmd_convergence(Job& job, const Common& c, const std::string& levels_text) {
  check_common(c);
  const Domain d = load_domain(c);
  const Bc bc = spectra::parse_bc(c.bc);
  const int k = c.k > 0 ? c.k : 5;
  std::vector<int> levels;
  for (double v : parse_number_list(levels_text)) {
    if (v != std::floor(v) || v < 0) throw InputError("--levels must be nonnegative integers");
    levels.push_back(static_cast<int>(v));
  }
  const auto t = fem::convergence_study(d, bc, k, levels, c.tol);
  job.config = common_config(c);
  job.config.erase("method");
  job.config.erase("refine");
  job.config["k"] = k;
  job.config["levels"] = levels;
  job.result = report::convergence_json(t);
  job.csv = report::convergence_csv(t);
  std::string s = "convergence: " + std::to_string(levels.size()) + " levels, mode 1 extrapolates to " +
                  fmt(t.extrapolated.front());
  if (std::isfinite(t.observed_order.front())) s += " (observed order " + fmt(t.observed_order.front()) + ")";
  job.summary.push_back(s);
}

void add_common(CLI::App* app, Common& c, bool domain, bool bc, bool lambda) {
  if (domain) app->add_option("--domain", c.domain, "Domain JSON file");
  if (bc) app->add_option("--bc", c.bc, "dirichlet or neumann");
  if (lambda) app->add_option("--lambda", c.lambda, "x | a:step:b | log:a:b:n, comma-separated");
  app->add_option("--refine", c.refine, "FEM refinement level");
  app->add_option("--tol", c.tol, "Eigensolver residual tolerance");
  app->add_option("--method", c.method, "auto, exact or fem");
  app->add_option("--out", c.out, "Report path, or csv/json for stdout");
}

}  // namespace

std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> v;
  for (const auto& p : split(s, ',')) {
    if (p.empty()) throw InputError("empty entry in list \"" + s + "\"");
    const double x = parse_double(p);
    if (!std::isfinite(x)) throw InputError("non-finite entry in list \"" + s + "\"");
    v.push_back(x);
  }
  if (v.empty()) throw InputError("empty list");
  return v;
}

std::vector<double> parse_lambda_spec(const std::string& spec) {
  std::vector<double> v;
  for (const auto& item : split(spec, ',')) {
    if (item.empty()) throw InputError("empty lambda entry in \"" + spec + "\"");
    const auto f = split(item, ':');
    if (f.size() == 1) {
      v.push_back(parse_double(f[0]));
    } else if (f.size() == 3) {
      const double a = parse_double(f[0]), step = parse_double(f[1]), b = parse_double(f[2]);
      if (!(step > 0) || b < a) throw InputError("lambda grid a:step:b needs step > 0 and b >= a");
      const double n = std::floor((b - a) / step * (1 + 1e-12) + 1e-9);
      if (n > 1e7) throw InputError("lambda grid too large");
      for (long i = 0; i <= static_cast<long>(n); ++i) v.push_back(a + static_cast<double>(i) * step);
    } else if (f.size() == 4 && f[0] == "log") {
      const double a = parse_double(f[1]), b = parse_double(f[2]), n = parse_double(f[3]);
      if (!(a > 0) || b < a || n < 1 || n != std::floor(n) || n > 1e7)
        throw InputError("log grid log:a:b:n needs 0 < a <= b and integer n >= 1");
      if (n == 1) {
        v.push_back(a);
      } else {
        for (long i = 0; i < static_cast<long>(n); ++i)
          v.push_back(i + 1 == static_cast<long>(n) ? b : a * std::pow(b / a, i / (n - 1)));
      }
    } else {
      throw InputError("bad lambda entry \"" + item + "\"");
    }
  }
  if (v.empty()) throw InputError("empty lambda specification");
  for (double x : v)
    if (!(x > 0) || !std::isfinite(x)) throw InputError("lambda values must be positive and finite");
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral counting checks on tiling domains", "polya-lab"};
  app.set_config("--config", "", "TOML/INI file with option values; [section] per subcommand");
  app.require_subcommand(1);

  Common c;
  Job job;
  std::string weyl_band = "1,1.05";
  std::string levels = "2,3,4";
  TileOpts tile;
  ExtOpts ext;
  ProveOpts prove;

  auto* spectrum = app.add_subcommand("spectrum", "List eigenvalues (exact or FEM)");
  add_common(spectrum, c, true, true, false);
  spectrum->add_option("--lambda-max", c.lambda_max, "All eigenvalues below this value");
  spectrum->add_option("-k", c.k, "The first k eigenvalues");

  auto* count = app.add_subcommand("count", "Counting function on a lambda grid");
  add_common(count, c, true, true, true);
  count->add_option("--plot", c.plot, "CSV: lambda,count,upper,weyl_term");

  auto* check = app.add_subcommand("check", "Check an inequality");
  check->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> checks;
  const std::pair<const char*, const char*> check_list[] = {
      {"polya-dirichlet", "N_D(lambda) <= Weyl term"},
      {"polya-neumann", "N_N(lambda) >= Weyl term"},
      {"li-yau", "N_D(lambda) <= ((d+2)/d)^(d/2) Weyl term"},
      {"kroger", "N_N(lambda) >= 2/(d+2) Weyl term"},
      {"friedlander", "mu_(k+1) <= lambda_k for k = 1..K"},
      {"faber-krahn", "lambda_1 >= lambda_1 of the equal-area disk"},
      {"weyl", "N_N(lambda) / Weyl term against a band (exact spectra)"}};
  for (const auto& [name, what] : check_list) {
    auto* sub = check->add_subcommand(name, what);
    const std::string n = name;
    const bool needs_lambda = n != "friedlander" && n != "faber-krahn";
    add_common(sub, c, true, n == "weyl", needs_lambda);
    if (n == "friedlander") sub->add_option("-k", c.k, "Largest index k (default 20)");
    if (n == "weyl") sub->add_option("--band", weyl_band, "lo,hi (default 1,1.05)");
    checks.emplace_back(n, sub);
  }

  auto* tile_cmd = app.add_subcommand("tile", "Generate or validate tilings");
  tile_cmd->require_subcommand(1);
  auto* tgen = tile_cmd->add_subcommand("generate", "Catalog tiling restricted to a window");
  tgen->add_option("--shape", tile.shape, "square | rectangle | right_triangle | equilateral_triangle | hexagon | l_tromino");
  tgen->add_option("--scale", tile.scale, "Prototile scale");
  tgen->add_option("--window", tile.window, "a,b or a,b,c,d");
  tgen->add_option("--out", tile.out, "Tiling JSON path");
  auto* tval = tile_cmd->add_subcommand("validate", "Sampled coverage and overlap check");
  tval->add_option("file", tile.file, "Tiling JSON")->required();
  tval->add_option("--resolution", tile.resolution, "Samples per axis");
  std::string tval_window;
  tval->add_option("--window", tval_window, "Override the stored window");
  tval->add_option("--out", tile.out, "Report path");

  auto* ext_cmd = app.add_subcommand("extension", "Reflection extension checks");
  ext_cmd->require_subcommand(1);
  auto* echeck = ext_cmd->add_subcommand("check", "Norm bound for random grid fields");
  echeck->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  echeck->add_option("--d", ext.d, "1 or 2");
  echeck->add_option("--L", ext.L, "Field lives on (-L, L)^d");
  echeck->add_option("--R", ext.R, "Reflection layer width");
  echeck->add_option("--h", ext.h, "Grid spacing, e.g. 1/128");
  echeck->add_option("--trials", ext.trials, "Number of fields (default 200)");
  echeck->add_option("--seed", ext.seed, "Base seed; trial i uses seed + i");
  echeck->add_flag("--holes", ext.holes, "Mask a random box in every other 2D field");
  echeck->add_option("--field", ext.field, "random, linear (f = x) or constant");
  echeck->add_option("--dump-field", ext.dump, "Write the first field and its extension (base path)");
  echeck->add_option("--out", c.out, "Report path");
  auto* etrans = ext_cmd->add_subcommand("transfer", "Count transfer between domains");
  etrans->add_option("--inner", ext.inner, "Inner domain JSON")->required();
  etrans->add_option("--outer", ext.outer, "Outer domain JSON")->required();
  etrans->add_option("--bound", ext.bound, "Norm-squared bound of the extension (default 2^d)");
  etrans->add_option("--lambda", c.lambda, "x | a:step:b | log:a:b:n, comma-separated");
  etrans->add_option("--refine", c.refine, "FEM refinement level");
  etrans->add_option("--tol", c.tol, "Eigensolver residual tolerance");
  etrans->add_option("--out", c.out, "Report path");

  auto* prove_cmd = app.add_subcommand("prove", "Replay the tiling lower bound");
  prove_cmd->add_option("--tiling", prove.tiling, "Catalog shape name or tiling JSON");
  prove_cmd->add_option("--scale", prove.scale, "Prototile scale");
  prove_cmd->add_option("--lambda", prove.lambda, "Spectral parameter");
  prove_cmd->add_option("--L", prove.Ls, "Comma-separated cube half-widths");
  prove_cmd->add_option("--refine", c.refine, "FEM refinement level");
  prove_cmd->add_option("--tol", c.tol, "Eigensolver residual tolerance");
  prove_cmd->add_option("--out", c.out, "Report path");
  prove_cmd->add_option("--plot", c.plot, "CSV: L,defect,lower_bound,weyl_term,N_self");

  auto* conv = app.add_subcommand("convergence", "FEM eigenvalues across refinement levels");
  conv->add_option("--domain", c.domain, "Domain JSON file");
  conv->add_option("--bc", c.bc, "dirichlet or neumann");
  conv->add_option("-k", c.k, "Number of modes (default 5)");
  conv->add_option("--levels", levels, "Comma-separated refinement levels");
  conv->add_option("--tol", c.tol, "Eigensolver residual tolerance");
  conv->add_option("--out", c.out, "Report path, or csv/json for stdout");
  conv->add_option("--plot", c.plot, "CSV: level,h,eig_1..eig_k");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "polya-lab: " << e.what() << '\n';
    return kInputError;
  }

  try {
    Route r;
    if (spectrum->parsed()) {
      job.command = "spectrum";
      cmd_spectrum(job, c);
    } else if (count->parsed()) {
      job.command = "count";
      cmd_count(job, c);
    } else if (check->parsed()) {
      for (const auto& [name, sub] : checks) {
        if (!sub->parsed()) continue;
        job.command = "check " + name;
        if (name == "friedlander") {
          cmd_check_friedlander(job, c, c.k > 0 ? c.k : 20);
        } else if (name == "faber-krahn") {
          cmd_check_faber_krahn(job, c);
        } else if (name == "weyl") {
          const auto band = parse_number_list(weyl_band);
          if (band.size() != 2 || !(band[0] < band[1])) throw InputError("--band takes lo,hi with lo < hi");
          cmd_check_weyl(job, c, band[0], band[1]);
        } else {
          cmd_check_weyl_type(job, c, name);
        }
      }
    } else if (tgen->parsed()) {
      job.command = "tile generate";
      cmd_tile_generate(job, tile, out);
      for (const auto& [path, bytes] : job.files) io::write_atomic(path, bytes);
      for (const auto& line : job.summary) (tile.out.empty() || tile.out == "-" ? err : out) << line << '\n';
      return kPass;
    } else if (tval->parsed()) {
      job.command = "tile validate";
      tile.window = tval_window;
      c.out = tile.out;
      cmd_tile_validate(job, tile);
    } else if (echeck->parsed()) {
      job.command = "extension check";
      cmd_extension_check(job, ext);
    } else if (etrans->parsed()) {
      job.command = "extension transfer";
      cmd_extension_transfer(job, ext, c);
    } else if (prove_cmd->parsed()) {
      job.command = "prove";
      cmd_prove(job, prove, c);
    } else if (conv->parsed()) {
      job.command = "convergence";
      cmd_convergence(job, c, levels);
    }
    r = route(job, c.out, c.plot);
    return finish(job, r, out, err);
  } catch (const InputError& e) {
    err << "polya-lab: input error: " << e.what() << '\n';
    return kInputError;
  } catch (const SolverError& e) {
    err << "polya-lab: solver did not converge: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const BoundViolation& e) {
    err << "polya-lab: violation: " << e.what() << '\n';
    return kViolation;
  } catch (const io::json::exception& e) {
    err << "polya-lab: input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "polya-lab: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace polya::cli
