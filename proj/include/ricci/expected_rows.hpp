#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ricci/bundle.hpp"
#include "ricci/profile.hpp"

namespace ricci {

/// One embedded reference-table row: the published defining constant and the
/// published significand/exponent rendering of nu. constant_decimals records
/// how many decimals the source prints, which sets the comparison tolerance
/// (2 units in the last printed decimal by default).
struct ExpectedRow {
  std::string_view bundle;
  Family family = Family::EinsteinZ2;
  std::optional<double> m;            // quasi-Einstein only
  std::optional<EpsilonChoice> eps;   // non-symmetric families only
  std::string_view constant_name;     // "R", "kappa0" or "kappa1"
  double constant_value = 0.0;
  int constant_decimals = 0;
  double significand = 0.0;
  int exponent = 0;
};

/// All 29 reference rows (6 + 6 + 6 + 11), in source order.
inline const std::vector<ExpectedRow>& expected_rows() {
  static const std::vector<ExpectedRow> rows = [] {
    const EpsilonChoice minus1{{-1}};
    const EpsilonChoice minus2{{-1, -1}};
    const EpsilonChoice mixed2{{1, -1}};
    std::vector<ExpectedRow> r;

    // r = 1, n = 1, p = 2, q = -1
    r.push_back({"cp1_over_cp1", Family::QuasiEinstein, 2.0, minus1, "kappa0", 8.83536, 5, 3.826565, 2});
    r.push_back({"cp1_over_cp1", Family::QuasiEinstein, 3.0, minus1, "kappa0", 12.76421, 5, 3.826559, 2});
    r.push_back({"cp1_over_cp1", Family::QuasiEinstein, 4.0, minus1, "kappa0", 16.63595, 5, 3.826557, 2});
    r.push_back({"cp1_over_cp1", Family::QuasiEinstein, 5.0, minus1, "kappa0", 20.48007, 5, 3.826555, 2});
    r.push_back({"cp1_over_cp1", Family::KRS, std::nullopt, std::nullopt, "kappa1", 0.26381, 5, 3.826552, 2});
    r.push_back({"cp1_over_cp1", Family::EinsteinZ2, std::nullopt, std::nullopt, "R", 2.10308, 5, 3.821379, 2});

    // r = 1, n = 2, p = 3, q = -1
    r.push_back({"cp1_over_cp2_q1", Family::QuasiEinstein, 2.0, minus1, "kappa0", 8.27782, 5, 8.666758, 3});
    r.push_back({"cp1_over_cp2_q1", Family::QuasiEinstein, 3.0, minus1, "kappa0", 11.52864, 5, 8.666749, 3});
    r.push_back({"cp1_over_cp2_q1", Family::QuasiEinstein, 4.0, minus1, "kappa0", 14.66181, 5, 8.666744, 3});
    r.push_back({"cp1_over_cp2_q1", Family::QuasiEinstein, 5.0, minus1, "kappa0", 17.73342, 5, 8.666742, 3});
    r.push_back({"cp1_over_cp2_q1", Family::KRS, std::nullopt, std::nullopt, "kappa1", 0.341008, 6, 8.666736, 3});
    r.push_back({"cp1_over_cp2_q1", Family::EinsteinZ2, std::nullopt, std::nullopt, "R", 2.08282637, 8, 8.658828, 3});

    // r = 1, n = 2, p = 3, q = -2
    r.push_back({"cp1_over_cp2_q2", Family::QuasiEinstein, 2.0, minus1, "kappa0", 2.978593, 6, 7.674619, 3});
    r.push_back({"cp1_over_cp2_q2", Family::QuasiEinstein, 3.0, minus1, "kappa0", 4.435314, 6, 7.673823, 3});
    r.push_back({"cp1_over_cp2_q2", Family::QuasiEinstein, 4.0, minus1, "kappa0", 5.858083, 6, 7.673454, 3});
    r.push_back({"cp1_over_cp2_q2", Family::QuasiEinstein, 5.0, minus1, "kappa0", 7.262220, 6, 7.673249, 3});
    r.push_back({"cp1_over_cp2_q2", Family::KRS, std::nullopt, std::nullopt, "kappa1", 0.735304, 6, 7.672742, 3});
    r.push_back({"cp1_over_cp2_q2", Family::EinsteinZ2, std::nullopt, std::nullopt, "R", 2.494993, 6, 7.520268, 3});

    // r = 2, n = (1, 2), p = (2, 3), q = (-1, -1)
    r.push_back({"cp1_over_cp1xcp2", Family::QuasiEinstein, 2.0, minus2, "kappa0", 4.7516687, 7, 16.60638555, 4});
    r.push_back({"cp1_over_cp1xcp2", Family::QuasiEinstein, 3.0, minus2, "kappa0", 6.6928512, 7, 16.60618089, 4});
    r.push_back({"cp1_over_cp1xcp2", Family::QuasiEinstein, 4.0, minus2, "kappa0", 8.5390242, 7, 16.60608368, 4});
    r.push_back({"cp1_over_cp1xcp2", Family::QuasiEinstein, 5.0, minus2, "kappa0", 10.3319164, 7, 16.60602849, 4});
    r.push_back({"cp1_over_cp1xcp2", Family::KRS, std::nullopt, std::nullopt, "kappa1", 0.60448, 5, 16.605881, 4});
    r.push_back({"cp1_over_cp1xcp2", Family::QuasiEinstein, 5.0, mixed2, "kappa0", 101.0473989, 7, 16.60491995, 4});
    r.push_back({"cp1_over_cp1xcp2", Family::QuasiEinstein, 4.0, mixed2, "kappa0", 88.035526, 6, 16.60491993, 4});
    r.push_back({"cp1_over_cp1xcp2", Family::QuasiEinstein, 3.0, mixed2, "kappa0", 74.99986, 5, 16.60491989, 4});
    r.push_back({"cp1_over_cp1xcp2", Family::QuasiEinstein, 2.0, mixed2, "kappa0", 61.925673, 6, 16.60491982, 4});
    r.push_back({"cp1_over_cp1xcp2", Family::EinsteinWW, std::nullopt, mixed2, "kappa0", 35.496485, 6, 16.60491943, 4});
    r.push_back({"cp1_over_cp1xcp2", Family::EinsteinZ2, std::nullopt, std::nullopt, "R", 2.1956987083, 10, 16.53299983, 4});
    return r;
  }();
  return rows;
}

inline std::vector<ExpectedRow> expected_rows_for(std::string_view bundle) {
  std::vector<ExpectedRow> out;
  for (const auto& row : expected_rows())
    if (row.bundle == bundle) out.push_back(row);
  return out;
}

}  // namespace ricci
