#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ricci/bundle.hpp"
#include "ricci/errors.hpp"
#include "ricci/numerics.hpp"

namespace ricci {

enum class Family { EinsteinZ2, EinsteinWW, KRS, QuasiEinstein };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::EinsteinZ2: return "einstein_z2";
    case Family::EinsteinWW: return "einstein_ww";
    case Family::KRS: return "krs";
    case Family::QuasiEinstein: return "qe";
  }
  return "unknown";
}

inline Family parse_family(std::string_view s) {
  if (s == "einstein_z2") return Family::EinsteinZ2;
  if (s == "einstein_ww") return Family::EinsteinWW;
  if (s == "krs") return Family::KRS;
  if (s == "qe") return Family::QuasiEinstein;
  throw ConfigError("unknown family '" + std::string(s) + "'; expected einstein_z2, einstein_ww, krs or qe");
}

/// Constants of the Z2-symmetric Einstein family. The profile lives on
/// [0, 2R]; each fiber coefficient satisfies 8 A_i^2 E - 8 A_i p_i - q_i^2 = 0
/// with E = R(R-4)/2 < 0.
struct Z2Constants {
  double R = 0.0;
  std::vector<double> A;
  double E = 0.0;
};

/// Constants of the non-symmetric Einstein family on [0, 4], with
/// E* = kappa0 (kappa0 + 4) / 2 and A_i signed by epsilon_i.
struct WWConstants {
  double kappa0 = 0.0;
  double E_star = 0.0;
  std::vector<double> A;
};

/// Constants of the shrinking soliton family on [0, 4]. The potential is
/// f(s) = kappa1 (s - 2) + C; C is fixed later by the entropy normalization
/// and kappa0 = C / kappa1 - 2 is derived from it.
struct KRSConstants {
  double kappa1 = 0.0;
  std::vector<double> sigma;  // sigma_i = -2 - 2 p_i / q_i
  std::optional<double> C;

  std::optional<double> kappa0() const {
    if (!C) return std::nullopt;
    return *C / kappa1 - 2.0;
  }
};

/// Constants of the quasi-Einstein family on [0, 4] for a real parameter
/// m > 1. Same quadratic as the non-symmetric Einstein family.
struct QEConstants {
  double m = 0.0;
  double kappa0 = 0.0;
  double E_star = 0.0;
  std::vector<double> A;
};

using FamilyConstants = std::variant<Z2Constants, WWConstants, KRSConstants, QEConstants>;

struct ProfileSample {
  double s = 0.0;
  double alpha = 0.0;
  std::vector<double> betas;
  double f = 0.0;
};

namespace detail {

/// Coefficients (ascending) of prod_i (A_i u + B_i)^{n_i} as a polynomial in u.
inline std::vector<double> product_poly(const std::vector<double>& A, const std::vector<double>& B,
                                        const std::vector<int>& n) {
  std::vector<double> coeffs{1.0};
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (int k = 0; k < n[i]; ++k) {
      std::vector<double> next(coeffs.size() + 1, 0.0);
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        next[j] += coeffs[j] * B[i];
        next[j + 1] += coeffs[j] * A[i];
      }
      coeffs = std::move(next);
    }
  }
  return coeffs;
}

inline double polyval(const std::vector<double>& coeffs, double u) {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * u + coeffs[k];
  return acc;
}

/// (P(u) - P(0)) / u for the polynomial above; exact, no cancellation. This is
/// the removable-singularity difference quotient used by the Z2 evaluator.
inline double polyval_diff_quotient(const std::vector<double>& coeffs, double u) {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * u + coeffs[k];
  return acc;
}

}  // namespace detail

/// A solved metric ansatz: family tag, resolved constants and evaluators for
/// the fiber coefficient alpha, the base coefficients beta_i and the potential
/// f on [0, s_star]. Immutable after construction; evaluators are reentrant
/// and integrate with the step count the profile was solved with.
struct MetricProfile {
  Family family = Family::EinsteinZ2;
  BundleData bundle;
  std::optional<EpsilonChoice> eps;  // EinsteinWW / QuasiEinstein only
  double s_star = 0.0;
  FamilyConstants constants;
  NumericsConfig cfg;
  double closing_residual = 0.0;  // |normalized closing function| at the solved constant

  std::optional<double> qe_m() const {
    if (const auto* qe = std::get_if<QEConstants>(&constants)) return qe->m;
    return std::nullopt;
  }

  /// Metric constant the family is parameterized by (R, kappa0 or kappa1).
  double defining_constant() const {
    switch (family) {
      case Family::EinsteinZ2: return std::get<Z2Constants>(constants).R;
      case Family::EinsteinWW: return std::get<WWConstants>(constants).kappa0;
      case Family::KRS: return std::get<KRSConstants>(constants).kappa1;
      case Family::QuasiEinstein: return std::get<QEConstants>(constants).kappa0;
    }
    return 0.0;
  }

  double beta(std::size_t i, double s) const {
    const BaseFactor& f = bundle.factors.at(i);
    const double q = static_cast<double>(f.q);
    switch (family) {
      case Family::EinsteinZ2: {
        const auto& c = std::get<Z2Constants>(constants);
        const double d = s - c.R;
        return c.A[i] * d * d - q * q / (4.0 * c.A[i]);
      }
      case Family::EinsteinWW: {
        const auto& c = std::get<WWConstants>(constants);
        const double d = s + c.kappa0;
        return c.A[i] * d * d - q * q / (4.0 * c.A[i]);
      }
      case Family::KRS: {
        const auto& c = std::get<KRSConstants>(constants);
        return -q * (s + c.sigma[i]);
      }
      case Family::QuasiEinstein: {
        const auto& c = std::get<QEConstants>(constants);
        const double d = s + c.kappa0;
        return c.A[i] * d * d - q * q / (4.0 * c.A[i]);
      }
    }
    return 0.0;
  }

  /// Product of beta_i^{n_i}; the volume density along the interval.
  double beta_product(double s) const {
    double prod = 1.0;
    for (std::size_t i = 0; i < bundle.factors.size(); ++i)
      prod *= detail::ipow(beta(i, s), bundle.factors[i].n);
    return prod;
  }

  /// alpha(s) on [0, s_star]. For the Z2 family values past the midpoint R are
  /// produced by reflection, alpha(s) = alpha(2R - s).
  double alpha(double s) const {
    require_in_domain(s);
    if (family == Family::EinsteinZ2) {
      const double R = std::get<Z2Constants>(constants).R;
      return alpha_z2_direct(s <= R ? s : 2.0 * R - s);
    }
    return alpha_generic(s);
  }

  /// Z2 only: the smooth singularity-subtracted evaluator on all of [0, 2R],
  /// without reflection. Symmetric about R exactly when the closing condition
  /// holds, which makes it a meaningful check of the solved R. For the other
  /// families this is identical to alpha().
  double alpha_unreflected(double s) const {
    require_in_domain(s);
    if (family == Family::EinsteinZ2) return alpha_z2_direct(s);
    return alpha_generic(s);
  }

  /// Potential function. Identically zero for the Einstein families. For the
  /// soliton it is kappa1 (s - 2) + C, reported with C = 0 until the entropy
  /// normalization has been applied. For the quasi-Einstein family f is only
  /// defined up to an additive constant; the gauge here fixes
  /// e^{-f} = ((s + kappa0)^2 / (2 E*))^{m/2}.
  double potential(double s) const {
    require_in_domain(s);
    switch (family) {
      case Family::EinsteinZ2:
      case Family::EinsteinWW: return 0.0;
      case Family::KRS: {
        const auto& c = std::get<KRSConstants>(constants);
        return c.kappa1 * (s - 2.0) + c.C.value_or(0.0);
      }
      case Family::QuasiEinstein: {
        const auto& c = std::get<QEConstants>(constants);
        const double d = s + c.kappa0;
        return -(c.m / 2.0) * std::log(d * d / (2.0 * c.E_star));
      }
    }
    return 0.0;
  }

  ProfileSample eval(double s) const {
    require_in_domain(s);
    ProfileSample out;
    out.s = s;
    out.alpha = alpha(s);
    out.betas.resize(bundle.factors.size());
    for (std::size_t i = 0; i < bundle.factors.size(); ++i) out.betas[i] = beta(i, s);
    out.f = potential(s);
    return out;
  }

  /// alpha at the Simpson panel edges 0, 3h, 6h, ..., s_star (cfg.steps/3 + 1
  /// values) computed in one cumulative pass. Used for the interior
  /// positivity check; for Z2 the unreflected evaluator is used on the whole
  /// interval.
  std::vector<double> alpha_panel_grid() const {
    const int steps = cfg.steps;
    const double h = s_star / steps;
    if (family == Family::EinsteinZ2) {
      const auto& c = std::get<Z2Constants>(constants);
      const auto poly = z2_poly();
      const double PR = poly[0];
      const double cc = -c.E;
      auto psi = [&](double x) {
        const double d = x - c.R;
        return 0.5 * detail::polyval(poly, d * d) - c.E * detail::polyval_diff_quotient(poly, d * d);
      };
      const auto prefix = integrate_simpson38_prefix(psi, 0.0, s_star, steps);
      std::vector<double> out(prefix.size());
      for (std::size_t k = 0; k < prefix.size(); ++k) {
        const double s = (k == prefix.size() - 1) ? s_star : 3.0 * static_cast<double>(k) * h;
        const double d = s - c.R;
        out[k] = ((c.R - s) * prefix[k] + cc * PR * (s / c.R)) / detail::polyval(poly, d * d);
      }
      return out;
    }
    const auto prefix = integrate_simpson38_prefix([&](double x) { return alpha_integrand(x); }, 0.0,
                                                   s_star, steps);
    std::vector<double> out(prefix.size());
    for (std::size_t k = 0; k < prefix.size(); ++k) {
      const double s = (k == prefix.size() - 1) ? s_star : 3.0 * static_cast<double>(k) * h;
      out[k] = (k == 0) ? 0.0 : alpha_prefactor(s) * prefix[k];
    }
    return out;
  }

 private:
  void require_in_domain(double s) const {
    if (!(s >= 0.0) || !(s <= s_star))
      throw DomainError("s = " + std::to_string(s) + " outside [0, " + std::to_string(s_star) + "]");
  }

  std::vector<double> z2_poly() const {
    const auto& c = std::get<Z2Constants>(constants);
    std::vector<double> B(c.A.size());
    std::vector<int> n(c.A.size());
    for (std::size_t i = 0; i < c.A.size(); ++i) {
      const double q = static_cast<double>(bundle.factors[i].q);
      B[i] = -q * q / (4.0 * c.A[i]);
      n[i] = bundle.factors[i].n;
    }
    return detail::product_poly(c.A, B, n);
  }

  // Z2 fiber coefficient through the subtracted representation
  //   alpha(s) = [ (R-s) G(s) + c P(R) (s/R) ] / P(s),
  // with G(s) the integral of psi(x) = P(x)/2 - E (P(x)-P(R))/(R-x)^2 and
  // c = -E. Removing the double pole analytically keeps the quadrature
  // regular on the whole interval, including s = R where alpha(R) = c.
  double alpha_z2_direct(double s) const {
    const auto& c = std::get<Z2Constants>(constants);
    if (s == 0.0) return 0.0;
    const auto poly = z2_poly();
    const double PR = poly[0];
    const double cc = -c.E;
    auto psi = [&](double x) {
      const double d = x - c.R;
      return 0.5 * detail::polyval(poly, d * d) - c.E * detail::polyval_diff_quotient(poly, d * d);
    };
    const double G = integrate_simpson38(psi, 0.0, s, cfg.steps);
    const double d = s - c.R;
    return ((c.R - s) * G + cc * PR * (s / c.R)) / detail::polyval(poly, d * d);
  }

  double alpha_integrand(double x) const {
    switch (family) {
      case Family::EinsteinWW: {
        const auto& c = std::get<WWConstants>(constants);
        const double d = x + c.kappa0;
        return (c.E_star - 0.5 * d * d) / (d * d) * beta_product(x);
      }
      case Family::KRS: {
        const auto& c = std::get<KRSConstants>(constants);
        double W = 1.0;
        for (std::size_t i = 0; i < c.sigma.size(); ++i)
          W *= detail::ipow(x + c.sigma[i], bundle.factors[i].n);
        return (2.0 - x) * std::exp(-c.kappa1 * x) * W;
      }
      case Family::QuasiEinstein: {
        const auto& c = std::get<QEConstants>(constants);
        const double d = x + c.kappa0;
        return detail::pow_real(d, c.m - 2.0) * (c.E_star - 0.5 * d * d) * beta_product(x);
      }
      case Family::EinsteinZ2: break;  // handled separately
    }
    return 0.0;
  }

  double alpha_prefactor(double s) const {
    switch (family) {
      case Family::EinsteinWW: {
        const auto& c = std::get<WWConstants>(constants);
        return (s + c.kappa0) / beta_product(s);
      }
      case Family::KRS: {
        const auto& c = std::get<KRSConstants>(constants);
        double W = 1.0;
        for (std::size_t i = 0; i < c.sigma.size(); ++i)
          W *= detail::ipow(s + c.sigma[i], bundle.factors[i].n);
        return std::exp(c.kappa1 * s) / W;
      }
      case Family::QuasiEinstein: {
        const auto& c = std::get<QEConstants>(constants);
        return detail::pow_real(s + c.kappa0, 1.0 - c.m) / beta_product(s);
      }
      case Family::EinsteinZ2: break;
    }
    return 0.0;
  }

  double alpha_generic(double s) const {
    if (s == 0.0) return 0.0;
    const double integral =
        integrate_simpson38([&](double x) { return alpha_integrand(x); }, 0.0, s, cfg.steps);
    return alpha_prefactor(s) * integral;
  }
};

/// Result of the smoothness/positivity audit below.
struct ProfileCheck {
  bool ok = true;
  std::vector<std::string> issues;
  double alpha_end = 0.0;
  double dalpha_start = 0.0;
  double dalpha_end = 0.0;
  double max_quadratic_residual = 0.0;

  void fail(std::string msg) {
    ok = false;
    issues.push_back(std::move(msg));
  }
};

/// Audits a solved profile against the smooth-extension requirements:
/// alpha(0) = 0, |alpha(s*)| <= 1e-8, alpha'(0) = 2 and alpha'(s*) = -2 by
/// finite differences, beta_i > 0 and alpha > 0 across the interval, and the
/// per-factor quadratic consistency residuals below 1e-10.
inline ProfileCheck check_profile(const MetricProfile& profile) {
  ProfileCheck out;
  const double s_star = profile.s_star;

  if (profile.alpha(0.0) != 0.0) out.fail("alpha(0) is not exactly zero");
  out.alpha_end = profile.alpha(s_star);
  if (!(std::abs(out.alpha_end) <= 1e-8))
    out.fail("|alpha(s_star)| = " + std::to_string(std::abs(out.alpha_end)) + " exceeds 1e-8");

  // One-sided second-order differences, h = 1e-5.
  const double h = 1e-5;
  out.dalpha_start = (-3.0 * profile.alpha(0.0) + 4.0 * profile.alpha(h) - profile.alpha(2.0 * h)) / (2.0 * h);
  out.dalpha_end =
      (3.0 * profile.alpha(s_star) - 4.0 * profile.alpha(s_star - h) + profile.alpha(s_star - 2.0 * h)) /
      (2.0 * h);
  if (!(std::abs(out.dalpha_start - 2.0) <= 1e-6))
    out.fail("alpha'(0) = " + std::to_string(out.dalpha_start) + " deviates from 2 by more than 1e-6");
  if (!(std::abs(out.dalpha_end + 2.0) <= 1e-6))
    out.fail("alpha'(s_star) = " + std::to_string(out.dalpha_end) + " deviates from -2 by more than 1e-6");

  // beta positivity on the quadrature grid (steps + 1 uniform points).
  for (std::size_t i = 0; i < profile.bundle.factors.size(); ++i) {
    double min_beta = profile.beta(i, 0.0);
    for (int k = 1; k <= profile.cfg.steps; ++k) {
      const double s = s_star * static_cast<double>(k) / profile.cfg.steps;
      min_beta = std::min(min_beta, profile.beta(i, s));
    }
    if (!(min_beta > 0.0))
      out.fail("beta_" + std::to_string(i + 1) + " reaches " + std::to_string(min_beta) + " <= 0");
  }

  // alpha positivity at the interior panel edges.
  const auto grid = profile.alpha_panel_grid();
  for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
    if (!(grid[k] > 0.0)) {
      out.fail("alpha <= 0 at interior grid point " + std::to_string(k));
      break;
    }
  }

  // Family consistency conditions.
  auto quad_residual = [&](double A, double E, const BaseFactor& f) {
    return std::abs(8.0 * A * A * E - 8.0 * A * f.p - static_cast<double>(f.q) * f.q);
  };
  if (const auto* z2 = std::get_if<Z2Constants>(&profile.constants)) {
    for (std::size_t i = 0; i < z2->A.size(); ++i)
      out.max_quadratic_residual =
          std::max(out.max_quadratic_residual, quad_residual(z2->A[i], z2->E, profile.bundle.factors[i]));
    if (!(z2->E < 0.0)) out.fail("Z2 requires E < 0");
    for (double a : z2->A)
      if (!(a < 0.0)) out.fail("Z2 requires negative fiber coefficients A_i");
  } else if (const auto* ww = std::get_if<WWConstants>(&profile.constants)) {
    for (std::size_t i = 0; i < ww->A.size(); ++i)
      out.max_quadratic_residual = std::max(
          out.max_quadratic_residual, quad_residual(ww->A[i], ww->E_star, profile.bundle.factors[i]));
    if (profile.eps)
      for (std::size_t i = 0; i < ww->A.size(); ++i)
        if ((ww->A[i] > 0.0) != (profile.eps->signs[i] > 0))
          out.fail("sign(A_" + std::to_string(i + 1) + ") does not match epsilon");
  } else if (const auto* qe = std::get_if<QEConstants>(&profile.constants)) {
    for (std::size_t i = 0; i < qe->A.size(); ++i)
      out.max_quadratic_residual = std::max(
          out.max_quadratic_residual, quad_residual(qe->A[i], qe->E_star, profile.bundle.factors[i]));
    const double estar_residual = std::abs(qe->E_star - 0.5 * qe->kappa0 * (qe->kappa0 + 4.0));
    if (!(estar_residual <= 1e-12 * std::max(1.0, std::abs(qe->E_star))))
      out.fail("E* inconsistent with kappa0");
  } else if (const auto* krs = std::get_if<KRSConstants>(&profile.constants)) {
    for (std::size_t i = 0; i < krs->sigma.size(); ++i) {
      const BaseFactor& f = profile.bundle.factors[i];
      const double lhs = -krs->sigma[i] - 2.0 * f.p / static_cast<double>(f.q);
      if (!(std::abs(lhs - 2.0) <= 1e-13))
        out.fail("sigma_" + std::to_string(i + 1) + " violates the soliton consistency condition");
    }
    if (krs->kappa1 == 0.0) out.fail("kappa1 must be nonzero");
  }
  if (!(out.max_quadratic_residual <= 1e-10))
    out.fail("quadratic consistency residual " + std::to_string(out.max_quadratic_residual) +
             " exceeds 1e-10");

  return out;
}

}  // namespace ricci
