#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ricci/bundle.hpp"
#include "ricci/entropy.hpp"
#include "ricci/errors.hpp"
#include "ricci/expected_rows.hpp"
#include "ricci/profile.hpp"
#include "ricci/solvers.hpp"

namespace ricci {

struct ComparisonTolerances {
  double significand_rtol = 5e-6;  ///< relative tolerance on the rendered significand
  double constant_units = 2.0;     ///< tolerance in units of the last printed decimal
};

/// One computed row: what was requested, what was solved, how far it sits from
/// the embedded reference value when a comparison applies.
struct RowOutcome {
  std::string bundle;
  Family family = Family::EinsteinZ2;
  std::optional<double> m;
  std::optional<EpsilonChoice> eps;
  std::string constant_name;

  std::optional<ExpectedRow> reference;  // absent for ad-hoc bundles
  std::optional<double> constant;        // solved defining constant
  std::optional<EntropyResult> entropy;
  std::string error;  // non-empty when the solver failed

  double constant_abs_dev = std::numeric_limits<double>::quiet_NaN();
  double significand_rel_dev = std::numeric_limits<double>::quiet_NaN();
  bool pass = false;
};

struct RunReport {
  std::vector<RowOutcome> rows;
  NumericsConfig cfg;
  ComparisonTolerances tol;
  bool compared = true;
  double elapsed_seconds = 0.0;

  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return !rows.empty();
  }
  bool any_solver_error() const {
    for (const auto& r : rows)
      if (!r.error.empty()) return true;
    return false;
  }
};

/// Process exit contract: 0 all-pass, 1 validation error (decided by the
/// caller before anything runs), 2 some row failed to solve, 3 every row
/// solved but a comparison missed its tolerance.
inline int report_exit_code(const RunReport& report) {
  if (report.any_solver_error()) return 2;
  for (const auto& r : report.rows)
    if (!r.pass) return 3;
  return 0;
}

inline MetricProfile solve_family(const BundleData& bundle, Family family, std::optional<double> m,
                                  const std::optional<EpsilonChoice>& eps, const NumericsConfig& cfg) {
  switch (family) {
    case Family::EinsteinZ2: return solve_ww_z2(bundle, cfg);
    case Family::EinsteinWW:
      if (!eps) throw ConfigError("einstein_ww needs an epsilon vector");
      return solve_ww_einstein(bundle, *eps, cfg);
    case Family::KRS: return solve_krs(bundle, cfg);
    case Family::QuasiEinstein:
      if (!m) throw ConfigError("qe needs the parameter m");
      if (!eps) throw ConfigError("qe needs an epsilon vector");
      return solve_qem(bundle, *m, *eps, cfg);
  }
  throw ConfigError("unknown family");
}

inline EntropyResult entropy_for(const MetricProfile& profile) {
  switch (profile.family) {
    case Family::EinsteinZ2:
    case Family::EinsteinWW: return nu_einstein(profile);
    case Family::KRS: return nu_krs(profile);
    case Family::QuasiEinstein: return nu_qem_normalized(profile);
  }
  throw InvalidProfile("unknown family");
}

inline const char* constant_name_for(Family family) {
  switch (family) {
    case Family::EinsteinZ2: return "R";
    case Family::EinsteinWW: return "kappa0";
    case Family::KRS: return "kappa1";
    case Family::QuasiEinstein: return "kappa0";
  }
  return "?";
}

/// Solve one row and, when a reference row is attached, compare against it.
/// Solver failures are captured in the outcome, never thrown.
inline RowOutcome compute_row(const BundleData& bundle, Family family, std::optional<double> m,
                              const std::optional<EpsilonChoice>& eps, const NumericsConfig& cfg,
                              const std::optional<ExpectedRow>& reference, const ComparisonTolerances& tol) {
  RowOutcome out;
  out.bundle = bundle.name;
  out.family = family;
  out.m = m;
  out.eps = eps;
  out.constant_name = constant_name_for(family);
  out.reference = reference;
  try {
    const MetricProfile profile = solve_family(bundle, family, m, eps, cfg);
    out.constant = profile.defining_constant();
    out.entropy = entropy_for(profile);
    if (reference) {
      out.constant_abs_dev = std::abs(*out.constant - reference->constant_value);
      out.significand_rel_dev =
          std::abs(out.entropy->significand - reference->significand) / reference->significand;
      const double constant_atol = tol.constant_units * std::pow(10.0, -reference->constant_decimals);
      out.pass = out.constant_abs_dev <= constant_atol && out.significand_rel_dev <= tol.significand_rtol;
    } else {
      out.pass = true;
    }
  } catch (const Error& e) {
    out.error = e.what();
    out.pass = false;
  }
  return out;
}

/// Solve and compare every reference row of the named built-in bundles.
/// Individual row failures never abort the batch.
inline RunReport run_catalog(const std::vector<std::string>& names, const NumericsConfig& cfg = {},
                             const ComparisonTolerances& tol = {}) {
  cfg.validate_or_throw();
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.cfg = cfg;
  report.tol = tol;
  for (const auto& name : names) {
    const BundleData bundle = builtin_catalog(name);
    for (const ExpectedRow& row : expected_rows_for(name))
      report.rows.push_back(compute_row(bundle, row.family, row.m, row.eps, cfg, row, tol));
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Solve a standard family set for a user-supplied bundle (no comparison):
/// the Z2 Einstein metric, the soliton when every q_i < 0, and quasi-Einstein
/// metrics for the given m values. eps defaults to all -1.
inline RunReport run_custom_bundle(const BundleData& bundle, const std::vector<double>& m_values,
                                   std::optional<EpsilonChoice> eps, const NumericsConfig& cfg = {}) {
  cfg.validate_or_throw();
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.cfg = cfg;
  report.compared = false;
  const EpsilonChoice eps_used = eps.value_or(EpsilonChoice::all_minus(bundle.r()));

  report.rows.push_back(compute_row(bundle, Family::EinsteinZ2, std::nullopt, std::nullopt, cfg,
                                    std::nullopt, {}));
  bool all_q_negative = true;
  for (const BaseFactor& f : bundle.factors) all_q_negative = all_q_negative && f.q < 0;
  if (all_q_negative)
    report.rows.push_back(compute_row(bundle, Family::KRS, std::nullopt, std::nullopt, cfg, std::nullopt, {}));
  if (eps_used.any_plus())
    report.rows.push_back(compute_row(bundle, Family::EinsteinWW, std::nullopt, eps_used, cfg, std::nullopt, {}));
  for (double m : m_values)
    report.rows.push_back(compute_row(bundle, Family::QuasiEinstein, m, eps_used, cfg, std::nullopt, {}));

  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------------------
// Parameter sweeps and profile sampling
// ---------------------------------------------------------------------------

struct SweepRow {
  double m = 0.0;  // 0 marks the appended soliton comparison row
  std::optional<double> constant;
  std::optional<double> nu;
  std::optional<double> significand;
  int exponent = 0;
  std::string error;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::optional<SweepRow> krs;
  std::string monotonicity;  // "increasing", "decreasing", "mixed" or "n/a"
};

/// Quasi-Einstein sweep over m with the bundle's soliton appended for
/// comparison; per-m failures are recorded, not thrown.
inline SweepReport sweep_m(const BundleData& bundle, const EpsilonChoice& eps,
                           const std::vector<double>& m_values, const NumericsConfig& cfg = {}) {
  cfg.validate_or_throw();
  SweepReport report;
  for (double m : m_values) {
    SweepRow row;
    row.m = m;
    try {
      const MetricProfile profile = solve_qem(bundle, m, eps, cfg);
      const EntropyResult entropy = nu_qem_normalized(profile);
      row.constant = profile.defining_constant();
      row.nu = entropy.nu;
      row.significand = entropy.significand;
      row.exponent = entropy.exponent;
    } catch (const Error& e) {
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
  }

  bool all_q_negative = true;
  for (const BaseFactor& f : bundle.factors) all_q_negative = all_q_negative && f.q < 0;
  if (all_q_negative) {
    SweepRow row;
    try {
      const MetricProfile profile = solve_krs(bundle, cfg);
      const EntropyResult entropy = nu_krs(profile);
      row.constant = profile.defining_constant();
      row.nu = entropy.nu;
      row.significand = entropy.significand;
      row.exponent = entropy.exponent;
    } catch (const Error& e) {
      row.error = e.what();
    }
    report.krs = std::move(row);
  }

  std::vector<double> nus;
  for (const auto& row : report.rows)
    if (row.nu) nus.push_back(*row.nu);
  if (nus.size() < 2) {
    report.monotonicity = "n/a";
  } else {
    bool increasing = true, decreasing = true;
    for (std::size_t i = 1; i < nus.size(); ++i) {
      increasing = increasing && nus[i] > nus[i - 1];
      decreasing = decreasing && nus[i] < nus[i - 1];
    }
    report.monotonicity = increasing ? "increasing" : decreasing ? "decreasing" : "mixed";
  }
  return report;
}

/// Uniform sampling of a solved profile on [0, s_star], endpoints included.
inline std::vector<ProfileSample> sample_profile(const MetricProfile& profile, int grid_points) {
  if (grid_points < 2) throw ConfigError("sample grid needs at least 2 points");
  std::vector<ProfileSample> out;
  out.reserve(static_cast<std::size_t>(grid_points));
  for (int k = 0; k < grid_points; ++k) {
    const double s =
        (k == grid_points - 1) ? profile.s_star : profile.s_star * static_cast<double>(k) / (grid_points - 1);
    out.push_back(profile.eval(s));
  }
  return out;
}

}  // namespace ricci
