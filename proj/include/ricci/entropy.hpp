#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <variant>

#include "ricci/errors.hpp"
#include "ricci/numerics.hpp"
#include "ricci/profile.hpp"

namespace ricci {

/// log(4 pi e); every entropy formula below is stated at tau = 1.
inline double log_4pi_e() { return std::log(4.0 * std::numbers::pi) + 1.0; }

struct EntropyBreakdown {
  double K_constant = 0.0;        ///< 2 pi prod vol_i (with (-q_i)^{n_i} folded in for the soliton)
  double main_integral = 0.0;     ///< the interval integral entering the formula
  std::optional<double> volume;   ///< total metric volume, Einstein families only
  int dimension = 0;              ///< real dimension entering (4 pi e)^{n/2}
  std::optional<double> C;        ///< soliton potential normalization, KRS only
};

/// nu value plus its rendering nu = log(significand * e^{-exponent}). The
/// exponent follows the published convention for catalog bundles; otherwise
/// the smallest integer putting the significand in [1, 20) is used.
struct EntropyResult {
  double nu = 0.0;
  double significand = 0.0;
  int exponent = 0;
  EntropyBreakdown breakdown;
};

namespace detail {

inline int choose_exponent(double nu, const std::optional<int>& table_exponent) {
  if (table_exponent) return *table_exponent;
  return static_cast<int>(std::ceil(-nu));
}

inline EntropyResult make_result(double nu, const std::optional<int>& table_exponent,
                                 EntropyBreakdown breakdown) {
  if (!std::isfinite(nu)) throw InvalidProfile("entropy evaluated to a non-finite value");
  EntropyResult out;
  out.nu = nu;
  out.exponent = choose_exponent(nu, table_exponent);
  out.significand = std::exp(nu + out.exponent);
  out.breakdown = std::move(breakdown);
  return out;
}

inline double base_volume_product(const BundleData& bundle) {
  double prod = 1.0;
  for (const BaseFactor& f : bundle.factors) prod *= f.vol;
  return prod;
}

}  // namespace detail

/// Entropy of an Einstein profile: nu = log(Vol / (4 pi e)^{n/2}) with
/// Vol = 2 pi prod vol_i * integral_0^{s*} prod beta_i^{n_i} ds.
inline EntropyResult nu_einstein(const MetricProfile& profile) {
  if (profile.family != Family::EinsteinZ2 && profile.family != Family::EinsteinWW)
    throw InvalidProfile("nu_einstein needs an Einstein-family profile");
  const double K = 2.0 * std::numbers::pi * detail::base_volume_product(profile.bundle);
  const double integral = integrate_simpson38([&](double s) { return profile.beta_product(s); }, 0.0,
                                              profile.s_star, profile.cfg.steps);
  if (!(integral > 0.0)) throw InvalidProfile("volume integral is not positive");
  const int n = profile.bundle.total_dimension();
  const double volume = K * integral;
  const double nu = std::log(volume) - 0.5 * n * log_4pi_e();
  return detail::make_result(nu, profile.bundle.table_exponent,
                             EntropyBreakdown{K, integral, volume, n, std::nullopt});
}

/// Entropy of the soliton:
///   nu = log(K I / (4 pi e)^{n/2}),
///   I = integral_0^4 e^{-kappa1 (x-2)} prod (x + sigma_i)^{n_i} dx,
///   K = 2 pi prod (-q_i)^{n_i} vol_i.
/// The potential normalization constant C = nu + n/2 is reported alongside.
inline EntropyResult nu_krs(const MetricProfile& profile) {
  const auto* constants = std::get_if<KRSConstants>(&profile.constants);
  if (profile.family != Family::KRS || constants == nullptr)
    throw InvalidProfile("nu_krs needs a soliton profile");
  double K = 2.0 * std::numbers::pi;
  for (const BaseFactor& f : profile.bundle.factors)
    K *= detail::ipow(-static_cast<double>(f.q), f.n) * f.vol;
  auto integrand = [&](double x) {
    double W = 1.0;
    for (std::size_t i = 0; i < constants->sigma.size(); ++i)
      W *= detail::ipow(x + constants->sigma[i], profile.bundle.factors[i].n);
    return std::exp(-constants->kappa1 * (x - 2.0)) * W;
  };
  const double I = integrate_simpson38(integrand, 0.0, 4.0, profile.cfg.steps);
  if (!(I > 0.0)) throw InvalidProfile("weighted volume integral is not positive");
  const int n = profile.bundle.total_dimension();
  const double nu = std::log(K * I) - 0.5 * n * log_4pi_e();
  return detail::make_result(nu, profile.bundle.table_exponent,
                             EntropyBreakdown{K, I, std::nullopt, n, nu + 0.5 * n});
}

/// Copy of a soliton profile with the potential normalization applied, so that
/// f(s) = kappa1 (s - 2) + C with C = nu + n/2.
inline MetricProfile normalize_krs_potential(MetricProfile profile) {
  const EntropyResult entropy = nu_krs(profile);
  auto& constants = std::get<KRSConstants>(profile.constants);
  constants.C = entropy.breakdown.C;
  return profile;
}

/// Normalized entropy of a quasi-Einstein profile (the warped-product entropy
/// with the fiber contribution subtracted):
///   nu~ = log(K (2 E*)^{-m/2} J) - (n/2) log(4 pi e),
///   J = integral_0^4 (s + kappa0)^m prod beta_i^{n_i} ds,  K = 2 pi prod vol_i.
inline EntropyResult nu_qem_normalized(const MetricProfile& profile) {
  const auto* constants = std::get_if<QEConstants>(&profile.constants);
  if (profile.family != Family::QuasiEinstein || constants == nullptr)
    throw InvalidProfile("nu_qem_normalized needs a quasi-Einstein profile");
  const double K = 2.0 * std::numbers::pi * detail::base_volume_product(profile.bundle);
  auto integrand = [&](double s) {
    return detail::pow_real(s + constants->kappa0, constants->m) * profile.beta_product(s);
  };
  const double J = integrate_simpson38(integrand, 0.0, 4.0, profile.cfg.steps);
  if (!(J > 0.0)) throw InvalidProfile("weighted volume integral is not positive");
  const int n = profile.bundle.total_dimension();
  const double nu = std::log(K) + std::log(J) - 0.5 * constants->m * std::log(2.0 * constants->E_star) -
                    0.5 * n * log_4pi_e();
  return detail::make_result(nu, profile.bundle.table_exponent,
                             EntropyBreakdown{K, J, std::nullopt, n, std::nullopt});
}

/// Entropy of the warped-product Einstein metric built from a quasi-Einstein
/// base with integer m >= 2 and a fiber of volume fiber_vol_scaled (measured
/// with the fiber Einstein constant scaled to 1/2). By additivity this is
/// nu~ + [log(fiber_vol_scaled) - (m/2) log(4 pi e)].
inline EntropyResult nu_warped_product(const MetricProfile& profile, double fiber_vol_scaled) {
  const auto* constants = std::get_if<QEConstants>(&profile.constants);
  if (profile.family != Family::QuasiEinstein || constants == nullptr)
    throw InvalidProfile("nu_warped_product needs a quasi-Einstein profile");
  const double m = constants->m;
  if (std::abs(m - std::nearbyint(m)) > 1e-9 || m < 2.0)
    throw FiberDimensionError("warped-product fiber dimension must be an integer >= 2, got " +
                              std::to_string(m));
  if (!(fiber_vol_scaled > 0.0)) throw FiberDimensionError("fiber volume must be positive");
  const EntropyResult base = nu_qem_normalized(profile);
  const double nu = base.nu + std::log(fiber_vol_scaled) - 0.5 * m * log_4pi_e();
  EntropyBreakdown breakdown = base.breakdown;
  breakdown.dimension = profile.bundle.total_dimension() + static_cast<int>(std::nearbyint(m));
  return detail::make_result(nu, std::nullopt, std::move(breakdown));
}

/// Entropy of a product of solitons with the same constant: plain addition.
inline double nu_sum(const EntropyResult& a, const EntropyResult& b) { return a.nu + b.nu; }

/// Volume of the round m-sphere scaled so its Einstein constant is 1/2
/// (radius^2 = 2(m-1)): omega_m (2(m-1))^{m/2} with omega_m the unit-sphere
/// volume.
inline double sphere_fiber_volume(int m) {
  if (m < 2) throw FiberDimensionError("round-sphere fiber needs m >= 2");
  const double omega =
      2.0 * std::pow(std::numbers::pi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
  return omega * std::pow(2.0 * (m - 1), 0.5 * m);
}

/// nu of the round m-sphere fiber at the same normalization.
inline double nu_round_sphere(int m) {
  return std::log(sphere_fiber_volume(m)) - 0.5 * m * log_4pi_e();
}

}  // namespace ricci
