#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ricci/errors.hpp"

namespace ricci {

template <typename F>
concept ScalarFunction = requires(F f, double x) {
  { f(x) } -> std::convertible_to<double>;
};

/// Shared settings for quadrature and root finding. The defaults reproduce the
/// reference tables; tighter settings are only needed for convergence studies.
struct NumericsConfig {
  int steps = 1500;            ///< Simpson 3/8 subintervals; must be a multiple of 3.
  double root_tol = 1e-12;     ///< absolute bracket width at which a root is accepted
  double residual_tol = 1e-10; ///< bound on |g(root)| for the (normalized) closing function
  int max_iter = 200;          ///< bisection/secant iteration budget
  int scan_grid = 512;         ///< grid points used for bracket discovery

  void validate_or_throw() const {
    if (steps < 3 || steps % 3 != 0)
      throw ConfigError("steps must be a positive multiple of 3, got " + std::to_string(steps));
    if (!(root_tol > 0.0) || !(residual_tol > 0.0))
      throw ConfigError("root_tol and residual_tol must be positive");
    if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
    if (scan_grid < 2) throw ConfigError("scan_grid must be >= 2");
  }
};

namespace detail {

inline void check_sample(double value, double x) {
  if (!std::isfinite(value))
    throw NumericalError("non-finite integrand sample at x = " + std::to_string(x));
}

}  // namespace detail

/// Composite Simpson 3/8 rule on [a, b]. Panels are summed strictly left to
/// right so identical inputs give bit-identical results. Exact for polynomials
/// up to degree 3.
template <ScalarFunction F>
double integrate_simpson38(F&& f, double a, double b, int steps) {
  if (steps < 3 || steps % 3 != 0)
    throw ConfigError("steps must be a positive multiple of 3, got " + std::to_string(steps));
  if (!(a <= b)) throw ConfigError("integration bounds must satisfy a <= b");
  if (a == b) return 0.0;

  const double h = (b - a) / steps;
  const double w = 3.0 * h / 8.0;
  double acc = 0.0;
  const int panels = steps / 3;
  for (int k = 0; k < panels; ++k) {
    const double x0 = a + 3.0 * k * h;
    const double x1 = x0 + h;
    const double x2 = x0 + 2.0 * h;
    const double x3 = (k == panels - 1) ? b : x0 + 3.0 * h;
    const double f0 = f(x0);
    detail::check_sample(f0, x0);
    const double f1 = f(x1);
    detail::check_sample(f1, x1);
    const double f2 = f(x2);
    detail::check_sample(f2, x2);
    const double f3 = f(x3);
    detail::check_sample(f3, x3);
    acc += w * (f0 + 3.0 * f1 + 3.0 * f2 + f3);
  }
  return acc;
}

/// Cumulative Simpson 3/8: returns the integral from a to each panel edge,
/// i.e. steps/3 + 1 values at spacing 3h, in one pass over the samples.
template <ScalarFunction F>
std::vector<double> integrate_simpson38_prefix(F&& f, double a, double b, int steps) {
  if (steps < 3 || steps % 3 != 0)
    throw ConfigError("steps must be a positive multiple of 3, got " + std::to_string(steps));
  if (!(a <= b)) throw ConfigError("integration bounds must satisfy a <= b");

  const double h = (b - a) / steps;
  const double w = 3.0 * h / 8.0;
  const int panels = steps / 3;
  std::vector<double> prefix(static_cast<std::size_t>(panels) + 1);
  prefix[0] = 0.0;
  double acc = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double x0 = a + 3.0 * k * h;
    const double f0 = f(x0);
    const double f1 = f(x0 + h);
    const double f2 = f(x0 + 2.0 * h);
    const double x3 = (k == panels - 1) ? b : x0 + 3.0 * h;
    const double f3 = f(x3);
    detail::check_sample(f0, x0);
    detail::check_sample(f1, x0 + h);
    detail::check_sample(f2, x0 + 2.0 * h);
    detail::check_sample(f3, x3);
    acc += w * (f0 + 3.0 * f1 + 3.0 * f2 + f3);
    prefix[static_cast<std::size_t>(k) + 1] = acc;
  }
  return prefix;
}

/// Bracketed scalar root finding: plain bisection until the bracket is
/// narrower than root_tol, then one secant polish inside the final bracket.
/// Never evaluates g outside [lo, hi]. Throws NoSignChange when the inputs do
/// not bracket a root and NoConvergence when either tolerance cannot be met.
template <ScalarFunction G>
double find_root_bracketed(G&& g, double lo, double hi, const NumericsConfig& cfg) {
  cfg.validate_or_throw();
  if (!(lo <= hi)) throw ConfigError("bracket must satisfy lo <= hi");

  double flo = g(lo);
  double fhi = g(hi);
  if (!std::isfinite(flo) || !std::isfinite(fhi))
    throw NumericalError("non-finite closing-function value at bracket endpoint");
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0)
    throw NoSignChange("g(lo) and g(hi) have the same sign on [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");

  int used = 0;
  for (; used < cfg.max_iter && (hi - lo) > cfg.root_tol; ++used) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
    const double fmid = g(mid);
    if (!std::isfinite(fmid))
      throw NumericalError("non-finite closing-function value at x = " + std::to_string(mid));
    if (fmid == 0.0) {
      lo = hi = mid;
      flo = fhi = 0.0;
      break;
    }
    if (flo * fmid < 0.0) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  if ((hi - lo) > cfg.root_tol && used >= cfg.max_iter)
    throw NoConvergence("bisection exhausted " + std::to_string(cfg.max_iter) +
                        " iterations; last bracket [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");

  // Secant polish; the candidate is a convex combination so it stays bracketed.
  double best = 0.5 * (lo + hi);
  double fbest = (lo == hi) ? flo : g(best);
  if (std::abs(flo) < std::abs(fbest)) {
    best = lo;
    fbest = flo;
  }
  if (std::abs(fhi) < std::abs(fbest)) {
    best = hi;
    fbest = fhi;
  }
  const double denom = fhi - flo;
  if (lo < hi && denom != 0.0) {
    const double xs = lo - flo * (hi - lo) / denom;
    if (xs > lo && xs < hi) {
      const double fs = g(xs);
      if (std::isfinite(fs) && std::abs(fs) < std::abs(fbest)) {
        best = xs;
        fbest = fs;
      }
    }
  }
  if (std::abs(fbest) > cfg.residual_tol)
    throw NoConvergence("root residual " + std::to_string(std::abs(fbest)) + " exceeds tolerance; bracket [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return best;
}

enum class ScanScale { Linear, Geometric };

/// Sweep [lo, hi] on a grid and collect every adjacent pair where g changes
/// sign, ascending. Non-finite samples are skipped, so g may be undefined on
/// part of the range. An empty result is not an error.
template <ScalarFunction G>
std::vector<std::pair<double, double>> scan_bracket(G&& g, double lo, double hi, int grid,
                                                    ScanScale scale = ScanScale::Linear) {
  if (!(lo < hi)) throw ConfigError("scan range must satisfy lo < hi");
  if (grid < 2) throw ConfigError("scan grid must have at least 2 points");
  if (scale == ScanScale::Geometric && !(lo > 0.0))
    throw ConfigError("geometric scan requires lo > 0");

  const double ratio = (scale == ScanScale::Geometric) ? std::pow(hi / lo, 1.0 / (grid - 1)) : 0.0;
  const double step = (hi - lo) / (grid - 1);

  std::vector<std::pair<double, double>> brackets;
  double x_prev = lo;
  double f_prev = g(lo);
  for (int i = 1; i < grid; ++i) {
    double x = (scale == ScanScale::Geometric) ? lo * std::pow(ratio, i) : lo + step * i;
    if (i == grid - 1) x = hi;
    const double fx = g(x);
    if (std::isfinite(f_prev) && std::isfinite(fx)) {
      const bool both_zero = (f_prev == 0.0 && fx == 0.0);
      if (!both_zero && f_prev * fx <= 0.0) brackets.emplace_back(x_prev, x);
    }
    x_prev = x;
    f_prev = fx;
  }
  return brackets;
}

namespace detail {

/// Integer power by repeated multiplication; keeps the evaluation order fixed.
inline double ipow(double base, int exponent) {
  double out = 1.0;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

/// Real power that takes the repeated-multiplication path for small integer
/// exponents (the common case in the quasi-Einstein integrands).
inline double pow_real(double base, double exponent) {
  const double rounded = std::nearbyint(exponent);
  if (exponent == rounded && std::abs(rounded) <= 64.0) {
    const int k = static_cast<int>(rounded);
    return k >= 0 ? ipow(base, k) : 1.0 / ipow(base, -k);
  }
  return std::pow(base, exponent);
}

}  // namespace detail

}  // namespace ricci
