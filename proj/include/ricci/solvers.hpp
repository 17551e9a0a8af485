#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ricci/bundle.hpp"
#include "ricci/errors.hpp"
#include "ricci/numerics.hpp"
#include "ricci/profile.hpp"

namespace ricci {

// Bracket-scan windows. They cover every constant appearing in the reference
// tables (largest kappa0 is ~101) with a wide margin.
inline constexpr double kZ2ScanLo = 0.05;
inline constexpr double kZ2ScanHi = 3.95;
inline constexpr double kKappa0ScanLo = 1e-3;
inline constexpr double kKappa0ScanHi = 1e3;
inline constexpr double kKappa1ScanMax = 8.0;
inline constexpr double kKappa1Exclusion = 1e-6;  // neighbourhood of the trivial root

namespace detail {

/// Both roots of 8 E A^2 - 8 p A - q^2 = 0, computed without cancellation:
/// the (8p + sqrt(disc)) root directly, the other via the product of roots.
/// Empty when the discriminant is negative or E == 0.
inline std::optional<std::pair<double, double>> fiber_quadratic_roots(double E, const BaseFactor& f) {
  const double p = static_cast<double>(f.p);
  const double q = static_cast<double>(f.q);
  const double disc = 64.0 * p * p + 32.0 * E * q * q;
  if (!(disc >= 0.0) || E == 0.0) return std::nullopt;
  const double r1 = (8.0 * p + std::sqrt(disc)) / (16.0 * E);
  const double r2 = -(q * q) / (8.0 * E * r1);
  return std::make_pair(r1, r2);
}

/// Z2 fiber coefficients at a candidate R: both quadratic roots are negative,
/// so positivity of beta_i on [0, 2R] (equivalently beta_i(0) > 0) picks the
/// admissible one. When both pass, the shallow root is taken; the direct
/// evaluation at the catalog data shows the deep root always turns beta
/// negative at the endpoints.
inline std::optional<std::vector<double>> z2_admissible_coefficients(double R, const BundleData& bundle) {
  const double E = 0.5 * R * (R - 4.0);
  std::vector<double> out;
  out.reserve(bundle.factors.size());
  for (const BaseFactor& f : bundle.factors) {
    const auto roots = fiber_quadratic_roots(E, f);
    if (!roots) return std::nullopt;
    const double q = static_cast<double>(f.q);
    std::optional<double> pick;
    for (double A : {roots->second, roots->first}) {  // shallow root first
      if (!(A < 0.0)) continue;
      const double beta0 = A * R * R - q * q / (4.0 * A);
      if (beta0 > 0.0 && !pick) pick = A;
    }
    if (!pick) return std::nullopt;
    out.push_back(*pick);
  }
  return out;
}

/// Epsilon-signed fiber coefficients for the kappa0-parameterized families.
inline std::vector<double> signed_coefficients(double E_star, const BundleData& bundle,
                                               const EpsilonChoice& eps) {
  std::vector<double> out;
  out.reserve(bundle.factors.size());
  for (std::size_t i = 0; i < bundle.factors.size(); ++i) {
    const auto roots = fiber_quadratic_roots(E_star, bundle.factors[i]);
    if (!roots) throw NumericalError("fiber quadratic has no real roots");
    out.push_back(eps.signs[i] > 0 ? std::max(roots->first, roots->second)
                                   : std::min(roots->first, roots->second));
  }
  return out;
}

/// Integral of f and of |f| over [a, b]; the pair (value, scale) defines a
/// normalized closing function whose residual is meaningful across families
/// regardless of the raw integrand magnitude.
template <ScalarFunction F>
std::pair<double, double> closing_value_and_scale(F&& f, double a, double b, int steps) {
  const double value = integrate_simpson38(f, a, b, steps);
  const double scale = integrate_simpson38([&](double x) { return std::abs(f(x)); }, a, b, steps);
  return {value, scale};
}

inline void require_valid_bundle(const BundleData& bundle) {
  const auto report = validate(bundle);
  if (!report.valid()) {
    std::string msg = "invalid bundle";
    for (const auto& v : report.violations) msg += "; " + v;
    throw ConfigError(msg);
  }
}

inline void require_epsilon(const BundleData& bundle, const EpsilonChoice& eps) {
  if (!eps.well_formed() || static_cast<int>(eps.signs.size()) != bundle.r())
    throw ConfigError("epsilon vector must list +1/-1 once per base factor");
}

inline std::vector<double> dedup_sorted_roots(std::vector<double> roots, double tol) {
  std::sort(roots.begin(), roots.end());
  std::vector<double> out;
  for (double r : roots)
    if (out.empty() || std::abs(r - out.back()) > tol * std::max(1.0, std::abs(r))) out.push_back(r);
  return out;
}

/// Run the scan/bisect pipeline over a set of brackets and build one profile
/// per root through `make_profile`. When several distinct roots solve, the
/// smoothness audit disambiguates: only profiles passing it are reported. A
/// single root is returned as-is (its audit is the caller's to run), so
/// degraded settings still produce a comparable result instead of an error.
template <class Closing, class MakeProfile>
std::vector<MetricProfile> solve_from_brackets(Closing&& g,
                                               const std::vector<std::pair<double, double>>& brackets,
                                               const NumericsConfig& cfg, MakeProfile&& make_profile) {
  std::vector<double> roots;
  std::string last_failure;
  for (const auto& [lo, hi] : brackets) {
    try {
      roots.push_back(find_root_bracketed(g, lo, hi, cfg));
    } catch (const Error& e) {
      last_failure = e.what();  // a spurious bracket may fail; others can still succeed
    }
  }
  roots = dedup_sorted_roots(std::move(roots), 16.0 * cfg.root_tol);
  if (roots.empty())
    throw NoConvergence(last_failure.empty() ? "no bracket converged" : last_failure);

  std::vector<MetricProfile> profiles;
  for (double root : roots) {
    MetricProfile profile = make_profile(root);
    profile.closing_residual = std::abs(g(root));
    profiles.push_back(std::move(profile));
  }
  if (profiles.size() > 1) {
    std::vector<MetricProfile> survivors;
    for (MetricProfile& profile : profiles)
      if (check_profile(profile).ok) survivors.push_back(std::move(profile));
    if (survivors.empty())
      throw NoConvergence("multiple roots found and every one failed the profile validity checks");
    return survivors;
  }
  return profiles;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Z2-symmetric Einstein metrics
// ---------------------------------------------------------------------------

/// Normalized closing function for the Z2 family. The defining requirement
/// alpha'(R) = 0 involves a double pole at the midpoint; subtracting it
/// analytically (the beta_i are even about R, so the difference quotient is a
/// polynomial) leaves the regular condition
///   F(R) = integral_0^R [ P(x)/2 - E (P(x)-P(R))/(R-x)^2 ] dx - c P(R)/R = 0,
/// with P = prod beta_i^{n_i}, E = R(R-4)/2 and c = -E. NaN is returned where
/// no admissible fiber coefficients exist so scans skip that region.
inline double z2_closing_function(double R, const BundleData& bundle, const NumericsConfig& cfg) {
  if (!(R > 0.0) || !(R < 4.0)) return std::numeric_limits<double>::quiet_NaN();
  const auto A = detail::z2_admissible_coefficients(R, bundle);
  if (!A) return std::numeric_limits<double>::quiet_NaN();
  const double E = 0.5 * R * (R - 4.0);
  const double c = -E;

  std::vector<double> B(A->size());
  std::vector<int> n(A->size());
  for (std::size_t i = 0; i < A->size(); ++i) {
    const double q = static_cast<double>(bundle.factors[i].q);
    B[i] = -q * q / (4.0 * (*A)[i]);
    n[i] = bundle.factors[i].n;
  }
  const auto poly = detail::product_poly(*A, B, n);
  const double PR = poly[0];
  auto psi = [&](double x) {
    const double u = (x - R) * (x - R);
    return 0.5 * detail::polyval(poly, u) - E * detail::polyval_diff_quotient(poly, u);
  };
  const auto [integral, weight] = detail::closing_value_and_scale(psi, 0.0, R, cfg.steps);
  const double tail = c * PR / R;
  const double scale = weight + std::abs(tail);
  return (integral - tail) / scale;
}

inline std::vector<MetricProfile> solve_ww_z2_all(const BundleData& bundle, const NumericsConfig& cfg = {}) {
  cfg.validate_or_throw();
  detail::require_valid_bundle(bundle);
  auto g = [&](double R) { return z2_closing_function(R, bundle, cfg); };
  const auto brackets = scan_bracket(g, kZ2ScanLo, kZ2ScanHi, cfg.scan_grid, ScanScale::Linear);
  if (brackets.empty()) throw NoConvergence("Z2 closing function has no sign change in (0.05, 3.95)");
  return detail::solve_from_brackets(g, brackets, cfg, [&](double R) {
    const auto A = detail::z2_admissible_coefficients(R, bundle);
    if (!A) throw NoAdmissibleRoot("no admissible fiber coefficients at R = " + std::to_string(R));
    MetricProfile p;
    p.family = Family::EinsteinZ2;
    p.bundle = bundle;
    p.s_star = 2.0 * R;
    p.constants = Z2Constants{R, *A, 0.5 * R * (R - 4.0)};
    p.cfg = cfg;
    return p;
  });
}

inline MetricProfile solve_ww_z2(const BundleData& bundle, const NumericsConfig& cfg = {}) {
  return solve_ww_z2_all(bundle, cfg).front();
}

// ---------------------------------------------------------------------------
// Non-symmetric Einstein metrics
// ---------------------------------------------------------------------------

/// Normalized closing function: alpha(4) = 0 reduces to the vanishing of the
/// integral in the alpha representation.
inline double ww_closing_function(double kappa0, const BundleData& bundle, const EpsilonChoice& eps,
                                  const NumericsConfig& cfg) {
  const double E_star = 0.5 * kappa0 * (kappa0 + 4.0);
  const auto A = detail::signed_coefficients(E_star, bundle, eps);
  auto integrand = [&](double x) {
    const double d = x + kappa0;
    double P = 1.0;
    for (std::size_t i = 0; i < A.size(); ++i) {
      const double q = static_cast<double>(bundle.factors[i].q);
      P *= detail::ipow(A[i] * d * d - q * q / (4.0 * A[i]), bundle.factors[i].n);
    }
    return (E_star - 0.5 * d * d) / (d * d) * P;
  };
  const auto [value, scale] = detail::closing_value_and_scale(integrand, 0.0, 4.0, cfg.steps);
  return scale > 0.0 ? value / scale : value;
}

inline std::vector<MetricProfile> solve_ww_einstein_all(const BundleData& bundle, const EpsilonChoice& eps,
                                                        const NumericsConfig& cfg = {}) {
  cfg.validate_or_throw();
  detail::require_valid_bundle(bundle);
  detail::require_epsilon(bundle, eps);
  if (!eps.any_plus())
    throw ExistenceFailed("the non-symmetric Einstein family needs at least one epsilon_i = +1");
  const double existence = existence_integral(bundle, eps, cfg);
  if (!(existence < 0.0))
    throw ExistenceFailed("existence integral = " + std::to_string(existence) + " is not negative");

  auto g = [&](double k0) { return ww_closing_function(k0, bundle, eps, cfg); };
  const auto brackets = scan_bracket(g, kKappa0ScanLo, kKappa0ScanHi, cfg.scan_grid, ScanScale::Geometric);
  if (brackets.empty()) throw NoConvergence("no kappa0 bracket in the geometric scan range");
  return detail::solve_from_brackets(g, brackets, cfg, [&](double k0) {
    const double E_star = 0.5 * k0 * (k0 + 4.0);
    MetricProfile p;
    p.family = Family::EinsteinWW;
    p.bundle = bundle;
    p.eps = eps;
    p.s_star = 4.0;
    p.constants = WWConstants{k0, E_star, detail::signed_coefficients(E_star, bundle, eps)};
    p.cfg = cfg;
    return p;
  });
}

inline MetricProfile solve_ww_einstein(const BundleData& bundle, const EpsilonChoice& eps,
                                       const NumericsConfig& cfg = {}) {
  return solve_ww_einstein_all(bundle, eps, cfg).front();
}

// ---------------------------------------------------------------------------
// Kaehler-Ricci solitons
// ---------------------------------------------------------------------------

/// Normalized soliton closing function
///   integral_0^4 (2 - x) e^{-kappa1 x} prod_i (x + sigma_i)^{n_i} dx = 0.
inline double krs_closing_function(double kappa1, const BundleData& bundle, const NumericsConfig& cfg) {
  auto integrand = [&](double x) {
    double W = 1.0;
    for (const BaseFactor& f : bundle.factors) {
      const double sigma = -2.0 - 2.0 * f.p / static_cast<double>(f.q);
      W *= detail::ipow(x + sigma, f.n);
    }
    return (2.0 - x) * std::exp(-kappa1 * x) * W;
  };
  const auto [value, scale] = detail::closing_value_and_scale(integrand, 0.0, 4.0, cfg.steps);
  return scale > 0.0 ? value / scale : value;
}

inline std::vector<MetricProfile> solve_krs_all(const BundleData& bundle, const NumericsConfig& cfg = {}) {
  cfg.validate_or_throw();
  detail::require_valid_bundle(bundle);
  for (const BaseFactor& f : bundle.factors)
    if (f.q >= 0) throw ConfigError("the soliton solver requires every q_i < 0");

  auto g = [&](double k1) { return krs_closing_function(k1, bundle, cfg); };
  // kappa1 = 0 is the trivial (Einstein) normalization; scan both half-ranges
  // around a small exclusion window.
  auto brackets = scan_bracket(g, kKappa1Exclusion, kKappa1ScanMax, cfg.scan_grid / 2, ScanScale::Linear);
  const auto negative =
      scan_bracket(g, -kKappa1ScanMax, -kKappa1Exclusion, cfg.scan_grid / 2, ScanScale::Linear);
  brackets.insert(brackets.end(), negative.begin(), negative.end());
  if (brackets.empty()) {
    if (g(-kKappa1Exclusion) * g(kKappa1Exclusion) < 0.0)
      throw TrivialSoliton("only the kappa1 = 0 root exists; no non-trivial soliton");
    throw NoConvergence("no kappa1 bracket in (-8, 8) away from 0");
  }
  return detail::solve_from_brackets(g, brackets, cfg, [&](double k1) {
    std::vector<double> sigma;
    sigma.reserve(bundle.factors.size());
    for (const BaseFactor& f : bundle.factors) sigma.push_back(-2.0 - 2.0 * f.p / static_cast<double>(f.q));
    MetricProfile p;
    p.family = Family::KRS;
    p.bundle = bundle;
    p.s_star = 4.0;
    p.constants = KRSConstants{k1, std::move(sigma), std::nullopt};
    p.cfg = cfg;
    return p;
  });
}

inline MetricProfile solve_krs(const BundleData& bundle, const NumericsConfig& cfg = {}) {
  return solve_krs_all(bundle, cfg).front();
}

// ---------------------------------------------------------------------------
// Quasi-Einstein metrics
// ---------------------------------------------------------------------------

inline double qe_closing_function(double kappa0, double m, const BundleData& bundle,
                                  const EpsilonChoice& eps, const NumericsConfig& cfg) {
  const double E_star = 0.5 * kappa0 * (kappa0 + 4.0);
  const auto A = detail::signed_coefficients(E_star, bundle, eps);
  auto integrand = [&](double x) {
    const double d = x + kappa0;
    double P = 1.0;
    for (std::size_t i = 0; i < A.size(); ++i) {
      const double q = static_cast<double>(bundle.factors[i].q);
      P *= detail::ipow(A[i] * d * d - q * q / (4.0 * A[i]), bundle.factors[i].n);
    }
    return detail::pow_real(d, m - 2.0) * (E_star - 0.5 * d * d) * P;
  };
  const auto [value, scale] = detail::closing_value_and_scale(integrand, 0.0, 4.0, cfg.steps);
  return scale > 0.0 ? value / scale : value;
}

inline std::vector<MetricProfile> solve_qem_all(const BundleData& bundle, double m, const EpsilonChoice& eps,
                                                const NumericsConfig& cfg = {}) {
  cfg.validate_or_throw();
  detail::require_valid_bundle(bundle);
  detail::require_epsilon(bundle, eps);
  if (!(m > 1.0)) throw ConfigError("quasi-Einstein parameter m must exceed 1");
  const double existence = existence_integral(bundle, eps, cfg);
  if (!(existence < 0.0))
    throw ExistenceFailed("existence integral = " + std::to_string(existence) + " is not negative");

  auto g = [&](double k0) { return qe_closing_function(k0, m, bundle, eps, cfg); };
  const auto brackets = scan_bracket(g, kKappa0ScanLo, kKappa0ScanHi, cfg.scan_grid, ScanScale::Geometric);
  if (brackets.empty()) throw NoConvergence("no kappa0 bracket in the geometric scan range");
  return detail::solve_from_brackets(g, brackets, cfg, [&](double k0) {
    const double E_star = 0.5 * k0 * (k0 + 4.0);
    MetricProfile p;
    p.family = Family::QuasiEinstein;
    p.bundle = bundle;
    p.eps = eps;
    p.s_star = 4.0;
    p.constants = QEConstants{m, k0, E_star, detail::signed_coefficients(E_star, bundle, eps)};
    p.cfg = cfg;
    return p;
  });
}

inline MetricProfile solve_qem(const BundleData& bundle, double m, const EpsilonChoice& eps,
                               const NumericsConfig& cfg = {}) {
  return solve_qem_all(bundle, m, eps, cfg).front();
}

}  // namespace ricci
