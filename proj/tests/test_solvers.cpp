#include <doctest.h>

#include <cmath>
#include <variant>

#include "ricci/solvers.hpp"

using namespace ricci;

namespace {

const NumericsConfig kCfg{};

const MetricProfile& page_profile() {
  static const MetricProfile p = solve_ww_z2(builtin_catalog("cp1_over_cp1"), kCfg);
  return p;
}

}  // namespace

TEST_CASE("Z2 Einstein: reference constants") {
  const auto& page = page_profile();
  const double R1 = std::get<Z2Constants>(page.constants).R;
  CHECK(std::abs(R1 - 2.10308) <= 1e-4);
  CHECK(page.s_star == doctest::Approx(2.0 * R1));

  const auto t3 = solve_ww_z2(builtin_catalog("cp1_over_cp2_q2"), kCfg);
  CHECK(std::abs(std::get<Z2Constants>(t3.constants).R - 2.494993) <= 1e-5);

  const auto t4 = solve_ww_z2(builtin_catalog("cp1_over_cp1xcp2"), kCfg);
  CHECK(std::abs(std::get<Z2Constants>(t4.constants).R - 2.1956987083) <= 1e-8);
}

TEST_CASE("Z2 Einstein: closing-condition reformulation checks") {
  // The regularized closing function must vanish at the published 5-digit R
  // (up to what those digits allow) and change sign across it.
  const BundleData bundle = builtin_catalog("cp1_over_cp1");
  const double at_printed = z2_closing_function(2.10308, bundle, kCfg);
  CHECK(std::abs(at_printed) <= 1e-5);
  CHECK(z2_closing_function(2.10306, bundle, kCfg) * z2_closing_function(2.10310, bundle, kCfg) < 0.0);

  // Cross-check against a finite difference of the singularity-subtracted
  // fiber coefficient near the midpoint: alpha'(R) must be ~0, compared with
  // the O(1) slope 1e-3 away from the midpoint on either side.
  const auto& page = page_profile();
  const double R = std::get<Z2Constants>(page.constants).R;
  auto slope_at = [&](double s) {
    const double h = 1e-4;
    return (page.alpha_unreflected(s + h) - page.alpha_unreflected(s - h)) / (2.0 * h);
  };
  CHECK(std::abs(slope_at(R)) <= 1e-6);
  CHECK(std::abs(slope_at(R - 1e-3)) <= 5e-3);
  CHECK(std::abs(slope_at(R + 1e-3)) <= 5e-3);

  // Midpoint value: the subtraction gives alpha(R) = R(4-R)/2 exactly; the
  // two-sided quadrature evaluations extrapolate to the same number.
  const double expected_mid = R * (4.0 - R) / 2.0;
  CHECK(std::abs(page.alpha(R) - expected_mid) <= 1e-9);
  const double extrapolated =
      0.5 * (page.alpha_unreflected(R - 1e-4) + page.alpha_unreflected(R + 1e-4));
  CHECK(std::abs(extrapolated - expected_mid) <= 1e-6);
}

TEST_CASE("Z2 Einstein: quadratic root disambiguation") {
  const auto& page = page_profile();
  const auto& constants = std::get<Z2Constants>(page.constants);
  const double R = constants.R;
  const double A = constants.A[0];
  CHECK(std::abs(A - (-0.06697)) <= 1e-4);

  // Both roots of the fiber quadratic are negative here; the discarded one
  // drives beta negative at the interval ends.
  const auto roots = detail::fiber_quadratic_roots(constants.E, page.bundle.factors[0]);
  REQUIRE(roots.has_value());
  CHECK(roots->first < 0.0);
  CHECK(roots->second < 0.0);
  const double other = (std::abs(roots->first - A) > 1e-9) ? roots->first : roots->second;
  const double q = page.bundle.factors[0].q;
  CHECK(other * R * R - q * q / (4.0 * other) < 0.0);  // beta(0) < 0 for the rejected root
}

TEST_CASE("Z2 Einstein: symmetry of the unreflected evaluator") {
  const auto& page = page_profile();
  const double R = std::get<Z2Constants>(page.constants).R;
  double worst = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double s = 2.0 * R * k / 100.0;
    worst = std::max(worst, std::abs(page.alpha_unreflected(s) - page.alpha_unreflected(2.0 * R - s)));
  }
  CHECK(worst <= 1e-9);

  // The public evaluator reflects past the midpoint by construction.
  CHECK(page.alpha(1.5 * R) == doctest::Approx(page.alpha(0.5 * R)).epsilon(1e-13));
}

TEST_CASE("KRS: reference constants and conventions") {
  const auto t1 = solve_krs(builtin_catalog("cp1_over_cp1"), kCfg);
  const double k1 = std::get<KRSConstants>(t1.constants).kappa1;
  CHECK(std::abs(k1 - 0.26381) <= 1e-4);
  CHECK(k1 > 0.0);  // e^{-kappa1 x} convention with all q < 0

  CHECK(std::abs(std::get<KRSConstants>(solve_krs(builtin_catalog("cp1_over_cp2_q1"), kCfg).constants).kappa1 -
                 0.341008) <= 1e-5);
  CHECK(std::abs(std::get<KRSConstants>(solve_krs(builtin_catalog("cp1_over_cp2_q2"), kCfg).constants).kappa1 -
                 0.735304) <= 1e-5);

  SUBCASE("beta at the origin is 2(p + q)") {
    CHECK(t1.beta(0, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("positive q is rejected") {
    BundleData b;
    b.factors = {{1, 3, 1, two_pi()}};
    CHECK_THROWS_AS(solve_krs(b, kCfg), ConfigError);
  }
}

TEST_CASE("WW Einstein: reference constant and existence gating") {
  const BundleData big = builtin_catalog("cp1_over_cp1xcp2");
  const EpsilonChoice mixed{{1, -1}};
  const auto profile = solve_ww_einstein(big, mixed, kCfg);
  CHECK(std::abs(std::get<WWConstants>(profile.constants).kappa0 - 35.496485) <= 1e-4);

  SUBCASE("r = 1 with epsilon = +1 cannot exist") {
    CHECK_THROWS_AS(solve_ww_einstein(builtin_catalog("cp1_over_cp1"), EpsilonChoice{{1}}, kCfg),
                    ExistenceFailed);
  }
  SUBCASE("some epsilon must be +1") {
    CHECK_THROWS_AS(solve_ww_einstein(big, EpsilonChoice{{-1, -1}}, kCfg), ExistenceFailed);
  }
  SUBCASE("A signs follow epsilon") {
    const auto& c = std::get<WWConstants>(profile.constants);
    CHECK(c.A[0] > 0.0);
    CHECK(c.A[1] < 0.0);
  }
}

TEST_CASE("quasi-Einstein: reference constants") {
  const auto t1 = solve_qem(builtin_catalog("cp1_over_cp1"), 2.0, EpsilonChoice{{-1}}, kCfg);
  CHECK(std::abs(std::get<QEConstants>(t1.constants).kappa0 - 8.83536) <= 1e-4);

  const auto t3 = solve_qem(builtin_catalog("cp1_over_cp2_q2"), 4.0, EpsilonChoice{{-1}}, kCfg);
  CHECK(std::abs(std::get<QEConstants>(t3.constants).kappa0 - 5.858083) <= 1e-5);

  const auto t4 = solve_qem(builtin_catalog("cp1_over_cp1xcp2"), 3.0, EpsilonChoice{{1, -1}}, kCfg);
  CHECK(std::abs(std::get<QEConstants>(t4.constants).kappa0 - 74.99986) <= 1e-4);

  SUBCASE("m must exceed 1") {
    CHECK_THROWS_AS(solve_qem(builtin_catalog("cp1_over_cp1"), 1.0, EpsilonChoice{{-1}}, kCfg), ConfigError);
  }
  SUBCASE("non-integer m is fine") {
    const auto p = solve_qem(builtin_catalog("cp1_over_cp1"), 2.5, EpsilonChoice{{-1}}, kCfg);
    const double k0 = std::get<QEConstants>(p.constants).kappa0;
    CHECK(k0 > 8.83536);
    CHECK(k0 < 12.76421);  // between the m = 2 and m = 3 values
  }
}

TEST_CASE("closing functions drive the generic scan/root machinery") {
  const BundleData cp1 = builtin_catalog("cp1_over_cp1");

  // Geometric kappa0 scan finds the bracket around the published constant.
  auto qe = [&](double k0) { return qe_closing_function(k0, 2.0, cp1, EpsilonChoice{{-1}}, kCfg); };
  const auto brackets = scan_bracket(qe, kKappa0ScanLo, kKappa0ScanHi, kCfg.scan_grid, ScanScale::Geometric);
  REQUIRE(brackets.size() == 1);
  CHECK(brackets[0].first < 8.83536);
  CHECK(brackets[0].second > 8.83536);

  // Bisection on the soliton closing function lands on the published kappa1.
  auto krs = [&](double k1) { return krs_closing_function(k1, cp1, kCfg); };
  const double k1 = find_root_bracketed(krs, 0.1, 1.0, kCfg);
  CHECK(std::abs(k1 - 0.26381) <= 1e-4);
  CHECK(std::abs(krs(k1)) <= kCfg.residual_tol);
}

TEST_CASE("profile invariants hold for solved profiles") {
  for (const MetricProfile& profile :
       {page_profile(), solve_krs(builtin_catalog("cp1_over_cp1"), kCfg),
        solve_qem(builtin_catalog("cp1_over_cp2_q2"), 2.0, EpsilonChoice{{-1}}, kCfg),
        solve_ww_einstein(builtin_catalog("cp1_over_cp1xcp2"), EpsilonChoice{{1, -1}}, kCfg)}) {
    const auto check = check_profile(profile);
    INFO(family_name(profile.family));
    for (const auto& issue : check.issues) INFO(issue);
    CHECK(check.ok);
    CHECK(check.max_quadratic_residual <= 1e-10);
    CHECK(profile.closing_residual <= kCfg.residual_tol);
    CHECK(profile.alpha(0.0) == 0.0);
    CHECK(std::abs(profile.alpha(profile.s_star)) <= 1e-8);
    CHECK(std::abs(check.dalpha_start - 2.0) <= 1e-6);
    CHECK(std::abs(check.dalpha_end + 2.0) <= 1e-6);
  }
}

TEST_CASE("profile invariants hold across non-catalog bundles") {
  // The constructions exist for any 0 < |q_i| < p_i (plus the sign condition
  // for the quasi-Einstein family, automatic for all-minus epsilon), so the
  // audit must pass well away from the shipped data.
  const std::vector<std::vector<BaseFactor>> datasets = {
      {{1, 3, -1, two_pi()}},
      {{1, 3, -2, two_pi()}},
      {{1, 4, -3, two_pi()}},
      {{2, 4, -3, two_pi_sq()}},
      {{3, 4, -1, 1.0}},
      {{1, 3, -2, two_pi()}, {2, 4, -1, two_pi_sq()}},
  };
  for (const auto& factors : datasets) {
    BundleData bundle;
    bundle.factors = factors;
    bundle.name = "synthetic";
    REQUIRE(validate(bundle).valid());
    CAPTURE(factors[0].p);
    CAPTURE(factors[0].q);

    const auto z2 = solve_ww_z2(bundle, kCfg);
    const auto z2_check = check_profile(z2);
    for (const auto& issue : z2_check.issues) INFO("z2: " << issue);
    CHECK(z2_check.ok);

    const auto krs = solve_krs(bundle, kCfg);
    const auto krs_check = check_profile(krs);
    for (const auto& issue : krs_check.issues) INFO("krs: " << issue);
    CHECK(krs_check.ok);
    CHECK(std::get<KRSConstants>(krs.constants).kappa1 > 0.0);

    const auto qe = solve_qem(bundle, 2.0, EpsilonChoice::all_minus(bundle.r()), kCfg);
    const auto qe_check = check_profile(qe);
    for (const auto& issue : qe_check.issues) INFO("qe: " << issue);
    CHECK(qe_check.ok);
  }
}

TEST_CASE("profile evaluation domain and boundary behavior") {
  const auto& page = page_profile();
  CHECK_THROWS_AS(page.eval(-0.1), DomainError);
  CHECK_THROWS_AS(page.eval(page.s_star + 0.1), DomainError);
  CHECK(page.eval(0.0).alpha == 0.0);
  CHECK(page.eval(0.0).f == 0.0);

  const auto qe = solve_qem(builtin_catalog("cp1_over_cp1"), 2.0, EpsilonChoice{{-1}}, kCfg);
  // quasi-Einstein potential: e^{-f} = ((s + kappa0)^2 / (2E*))^{m/2}
  const auto& c = std::get<QEConstants>(qe.constants);
  const double s = 1.7;
  const double expect = -c.m * std::log((s + c.kappa0) / std::sqrt(2.0 * c.E_star));
  CHECK(qe.potential(s) == doctest::Approx(expect).epsilon(1e-12));
}
