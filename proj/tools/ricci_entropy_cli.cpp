// Command-line front end: solves the metric families on built-in or
// user-supplied bundles, computes their nu-entropy, compares against the
// embedded reference rows and renders table/CSV/JSONL reports. Exit codes:
// 0 all rows pass, 1 invalid configuration or bundle, 2 a solver failed to
// converge, 3 a comparison missed its tolerance.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ricci/bundle_io.hpp"
#include "ricci/entropy.hpp"
#include "ricci/render.hpp"
#include "ricci/report.hpp"

namespace {

using namespace ricci;

EpsilonChoice parse_eps(const std::string& text) {
  EpsilonChoice eps;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token == "1" || token == "+1")
      eps.signs.push_back(1);
    else if (token == "-1")
      eps.signs.push_back(-1);
    else
      throw ConfigError("--eps entries must be 1 or -1, got '" + token + "'");
  }
  if (eps.signs.empty()) throw ConfigError("--eps must list at least one sign");
  return eps;
}

std::vector<double> parse_sweep_range(const std::string& text) {
  double lo = 0.0, hi = 0.0, step = 1.0;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ':')) parts.push_back(token);
  try {
    if (parts.size() == 1) {
      lo = hi = std::stod(parts[0]);
    } else if (parts.size() == 2 || parts.size() == 3) {
      lo = std::stod(parts[0]);
      hi = std::stod(parts[1]);
      if (parts.size() == 3) step = std::stod(parts[2]);
    } else {
      throw ConfigError("--sweep-m expects a:b or a:b:step");
    }
  } catch (const std::exception&) {
    throw ConfigError("--sweep-m expects numeric a:b or a:b:step, got '" + text + "'");
  }
  if (!(step > 0.0) || hi < lo) throw ConfigError("--sweep-m range must be increasing");
  std::vector<double> out;
  for (double m = lo; m <= hi + 1e-12; m += step) out.push_back(m);
  return out;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw ConfigError("cannot open output file '" + out_path + "'");
  file << text;
}

int steps_from_env_or(int fallback) {
  if (const char* env = std::getenv("ENTROPY_STEPS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("ENTROPY_STEPS is not an integer: ") + env);
    }
  }
  return fallback;
}

struct Options {
  std::vector<std::string> manifolds;
  std::string bundle_file;
  std::string family;
  std::optional<double> m;
  std::string eps_text;
  std::optional<int> steps;
  double rtol = 5e-6;
  std::string format = "table";
  bool compare = true;
  std::optional<int> sample;
  std::string sweep;
  std::string out_path;
};

int run(const Options& opt) {
  NumericsConfig cfg;
  cfg.steps = opt.steps ? *opt.steps : steps_from_env_or(cfg.steps);
  cfg.validate_or_throw();
  ComparisonTolerances tol;
  tol.significand_rtol = opt.rtol;

  std::optional<EpsilonChoice> eps;
  if (!opt.eps_text.empty()) eps = parse_eps(opt.eps_text);

  // Resolve the bundle set: explicit file, selected catalog names, or the
  // whole catalog.
  std::vector<BundleData> bundles;
  if (!opt.bundle_file.empty()) {
    BundleData bundle = load_bundle_file(opt.bundle_file);
    if (bundle.name.empty()) bundle.name = opt.bundle_file;
    const auto report = validate(bundle);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    if (!report.valid()) {
      for (const auto& v : report.violations) std::cerr << "error: " << v << '\n';
      return 1;
    }
    bundles.push_back(std::move(bundle));
  }
  for (const auto& name : opt.manifolds) bundles.push_back(builtin_catalog(name));
  if (bundles.empty())
    for (const auto& name : catalog_names()) bundles.push_back(builtin_catalog(name));

  // --- profile sampling mode -------------------------------------------------
  if (opt.sample) {
    if (bundles.size() != 1) throw ConfigError("--sample needs exactly one manifold or bundle file");
    if (opt.family.empty()) throw ConfigError("--sample needs --family");
    const Family family = parse_family(opt.family);
    MetricProfile profile = solve_family(bundles[0], family, opt.m, eps, cfg);
    if (family == Family::KRS) profile = normalize_krs_potential(profile);
    const auto samples = sample_profile(profile, *opt.sample);
    write_output(samples_to_csv(profile, samples), opt.out_path);
    return 0;
  }

  // --- quasi-Einstein sweep mode ----------------------------------------------
  if (!opt.sweep.empty()) {
    if (bundles.size() != 1) throw ConfigError("--sweep-m needs exactly one manifold or bundle file");
    const BundleData& bundle = bundles[0];
    const EpsilonChoice eps_used = eps.value_or(EpsilonChoice::all_minus(bundle.r()));
    const SweepReport sweep = sweep_m(bundle, eps_used, parse_sweep_range(opt.sweep), cfg);
    write_output(opt.format == "csv" ? sweep_to_csv(sweep) : sweep_to_table(sweep), opt.out_path);
    for (const auto& row : sweep.rows)
      if (!row.error.empty()) return 2;
    return 0;
  }

  // --- catalog / custom-bundle reports ----------------------------------------
  RunReport report;
  report.cfg = cfg;
  report.tol = tol;
  const auto start = std::chrono::steady_clock::now();
  for (const BundleData& bundle : bundles) {
    const auto expected = expected_rows_for(bundle.name);
    if (!expected.empty()) {
      for (const ExpectedRow& row : expected) {
        if (!opt.family.empty() && row.family != parse_family(opt.family)) continue;
        if (opt.m && (!row.m || *row.m != *opt.m)) continue;
        report.rows.push_back(compute_row(bundle, row.family, row.m, row.eps, cfg,
                                          opt.compare ? std::optional<ExpectedRow>(row) : std::nullopt,
                                          tol));
      }
    } else {
      std::vector<double> ms = {2.0, 3.0, 4.0, 5.0};
      if (opt.m) ms = {*opt.m};
      RunReport custom = run_custom_bundle(bundle, ms, eps, cfg);
      for (auto& row : custom.rows) report.rows.push_back(std::move(row));
      report.compared = false;
    }
  }
  if (!opt.compare) report.compared = false;
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (report.rows.empty()) throw ConfigError("no rows selected; check --family/--m filters");

  if (opt.format == "csv")
    write_output(to_csv(report), opt.out_path);
  else if (opt.format == "jsonl")
    write_output(to_jsonl(report), opt.out_path);
  else
    write_output(to_table(report), opt.out_path);
  return report_exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Constructs Einstein, Kaehler-Ricci-soliton and quasi-Einstein metric profiles on "
      "CP1-bundles over products of Fano Kaehler-Einstein manifolds and computes their "
      "nu-entropy, with regression comparison against embedded reference tables."};

  Options opt;
  app.add_option("--manifold", opt.manifolds,
                 "built-in manifold name(s): cp1_over_cp1, cp1_over_cp2_q1, cp1_over_cp2_q2, "
                 "cp1_over_cp1xcp2 (default: all)");
  app.add_option("--bundle-file", opt.bundle_file,
                 "JSON bundle description {\"factors\":[{\"n\":..,\"p\":..,\"q\":..,\"vol\":..}]}");
  app.add_option("--family", opt.family, "restrict to one family: einstein_z2, einstein_ww, krs, qe");
  double m_value = 0.0;
  auto* m_opt = app.add_option("--m", m_value, "quasi-Einstein parameter m (> 1)");
  app.add_option("--eps", opt.eps_text, "epsilon signs as a comma list, e.g. 1,-1");
  int steps_value = 0;
  auto* steps_opt =
      app.add_option("--steps", steps_value, "Simpson 3/8 subintervals (multiple of 3, default 1500; "
                                             "env ENTROPY_STEPS overrides the default)");
  app.add_option("--rtol", opt.rtol, "relative tolerance on the nu significand (default 5e-6)");
  app.add_option("--format", opt.format, "output format: table, csv or jsonl")
      ->check(CLI::IsMember({"table", "csv", "jsonl"}));
  app.add_flag("--compare,!--no-compare", opt.compare,
               "compare against the embedded reference rows (default on)");
  int sample_value = 0;
  auto* sample_opt = app.add_option("--sample", sample_value, "emit N uniform profile samples instead of a report");
  app.add_option("--sweep-m", opt.sweep, "sweep the quasi-Einstein parameter, a:b or a:b:step");
  app.add_option("--out", opt.out_path, "write the report to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);
  if (*m_opt) opt.m = m_value;
  if (*steps_opt) opt.steps = steps_value;
  if (*sample_opt) opt.sample = sample_value;

  try {
    return run(opt);
  } catch (const NoConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NoSignChange& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const TrivialSoliton& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
