#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ricci/errors.hpp"
#include "ricci/numerics.hpp"

namespace ricci {

/// One Fano Kaehler-Einstein factor of the base product. The Einstein
/// normalization Ric(h) = p h fixes the meaning of vol.
struct BaseFactor {
  int n = 1;        ///< complex dimension of the factor
  int p = 1;        ///< Einstein constant scale, Ric(h) = p h
  int q = -1;       ///< Euler-class coefficient of the circle bundle
  double vol = 0.0; ///< volume of the factor under the normalization above

  double p_over_abs_q() const { return static_cast<double>(p) / std::abs(static_cast<double>(q)); }
};

/// The topological/geometric input: a circle bundle over a product of base
/// factors, compactified to a CP1-bundle. Total real dimension is derived,
/// never stored.
struct BundleData {
  std::vector<BaseFactor> factors;
  std::string name;                       ///< catalog id or user label; may be empty
  std::optional<int> table_exponent;      ///< rendering convention for built-in entries

  int r() const { return static_cast<int>(factors.size()); }

  int total_dimension() const {
    int sum = 0;
    for (const auto& f : factors) sum += f.n;
    return 2 + 2 * sum;
  }
};

/// Per-factor sign vector used by the existence integrals and the sign choice
/// of the fiber-coefficient quadratic roots.
struct EpsilonChoice {
  std::vector<int> signs;  // entries are +1 or -1

  static EpsilonChoice all_minus(int r) { return EpsilonChoice{std::vector<int>(static_cast<std::size_t>(r), -1)}; }

  bool well_formed() const {
    for (int s : signs)
      if (s != 1 && s != -1) return false;
    return !signs.empty();
  }

  bool any_plus() const {
    for (int s : signs)
      if (s == 1) return true;
    return false;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (i) out += ',';
      out += (signs[i] > 0 ? "1" : "-1");
    }
    return out;
  }
};

/// Report-style validation result: every violated constraint is listed, an
/// empty violation list means the bundle is usable. Warnings flag inputs that
/// are accepted but outside the regression-tested range.
struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool valid() const { return violations.empty(); }
};

inline ValidationReport validate(const BundleData& bundle) {
  ValidationReport report;
  if (bundle.factors.empty()) report.violations.push_back("bundle needs at least one base factor (r >= 1)");
  for (std::size_t i = 0; i < bundle.factors.size(); ++i) {
    const BaseFactor& f = bundle.factors[i];
    const std::string tag = "factor " + std::to_string(i + 1) + ": ";
    if (f.n < 1) report.violations.push_back(tag + "n must be a positive integer");
    if (f.p < 1) report.violations.push_back(tag + "p must be a positive integer");
    if (f.q == 0) report.violations.push_back(tag + "q must be nonzero");
    if (f.q != 0 && std::abs(f.q) >= f.p) report.violations.push_back(tag + "|q| < p required");
    if (!(f.vol > 0.0)) report.violations.push_back(tag + "vol must be positive");
    if (f.q > 0) report.warnings.push_back(tag + "q > 0 accepted but untested against the reference tables");
  }
  return report;
}

/// Existence integral over [-1, 1]: the sign decides whether the non-symmetric
/// Einstein and quasi-Einstein constructions close up (negative means yes;
/// the Einstein case additionally needs some epsilon_i = +1).
inline double existence_integral(const BundleData& bundle, const EpsilonChoice& eps,
                                 const NumericsConfig& cfg = {}) {
  if (!eps.well_formed() || static_cast<int>(eps.signs.size()) != bundle.r())
    throw ConfigError("epsilon vector must have one sign (+1/-1) per base factor");
  const auto& factors = bundle.factors;
  auto integrand = [&](double x) {
    double prod = 1.0;
    for (std::size_t i = 0; i < factors.size(); ++i)
      prod *= detail::ipow(factors[i].p_over_abs_q() + eps.signs[i] * x, factors[i].n);
    return prod * x;
  };
  return integrate_simpson38(integrand, -1.0, 1.0, cfg.steps);
}

inline double two_pi() { return 2.0 * std::numbers::pi; }
inline double two_pi_sq() { return 2.0 * std::numbers::pi * std::numbers::pi; }

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "cp1_over_cp1",
      "cp1_over_cp2_q1",
      "cp1_over_cp2_q2",
      "cp1_over_cp1xcp2",
  };
  return names;
}

/// Built-in manifolds matching the published reference tables. Base volumes
/// are fixed by convention: vol(CP1) = 2*pi under Ric = 2h and vol(CP2) =
/// 2*pi^2 under Ric = 3h.
inline BundleData builtin_catalog(std::string_view name) {
  BundleData b;
  b.name = std::string(name);
  if (name == "cp1_over_cp1") {
    b.factors = {{1, 2, -1, two_pi()}};
    b.table_exponent = 2;
  } else if (name == "cp1_over_cp2_q1") {
    b.factors = {{2, 3, -1, two_pi_sq()}};
    b.table_exponent = 3;
  } else if (name == "cp1_over_cp2_q2") {
    b.factors = {{2, 3, -2, two_pi_sq()}};
    b.table_exponent = 3;
  } else if (name == "cp1_over_cp1xcp2") {
    b.factors = {{1, 2, -1, two_pi()}, {2, 3, -1, two_pi_sq()}};
    b.table_exponent = 4;
  } else {
    throw NotInCatalog("unknown manifold '" + std::string(name) + "'; known: cp1_over_cp1, cp1_over_cp2_q1, cp1_over_cp2_q2, cp1_over_cp1xcp2");
  }
  return b;
}

}  // namespace ricci
