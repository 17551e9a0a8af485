#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ricci/report.hpp"

namespace ricci {

/// 17 significant digits: enough to round-trip an IEEE double exactly.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string fmt7(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.7g", x);
  return buf;
}

namespace detail {

inline std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace detail

inline const char* kCsvHeader = "bundle,family,m,eps,constant_name,constant_value,nu,significand,exponent,pass";

/// Machine-readable CSV: '.' decimal point, 17 significant digits, RFC-style
/// quoting. Deterministic field order, no timestamps.
inline std::string to_csv(const RunReport& report) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const RowOutcome& row : report.rows) {
    out += detail::csv_quote(row.bundle);
    out += ',';
    out += std::string(family_name(row.family));
    out += ',';
    if (row.m) out += fmt17(*row.m);
    out += ',';
    if (row.eps) out += detail::csv_quote(row.eps->to_string());
    out += ',';
    out += row.constant_name;
    out += ',';
    if (row.constant) out += fmt17(*row.constant);
    out += ',';
    if (row.entropy) out += fmt17(row.entropy->nu);
    out += ',';
    if (row.entropy) out += fmt17(row.entropy->significand);
    out += ',';
    if (row.entropy) out += std::to_string(row.entropy->exponent);
    out += ',';
    out += row.pass ? "true" : "false";
    out += '\n';
  }
  return out;
}

/// JSON-lines rendering with the same fields as the CSV (null when absent),
/// plus error/deviation details.
inline std::string to_jsonl(const RunReport& report) {
  std::string out;
  for (const RowOutcome& row : report.rows) {
    out += "{\"bundle\":" + detail::json_string(row.bundle);
    out += ",\"family\":" + detail::json_string(std::string(family_name(row.family)));
    out += ",\"m\":" + (row.m ? fmt17(*row.m) : std::string("null"));
    out += ",\"eps\":" + (row.eps ? detail::json_string(row.eps->to_string()) : std::string("null"));
    out += ",\"constant_name\":" + detail::json_string(row.constant_name);
    out += ",\"constant_value\":" + (row.constant ? fmt17(*row.constant) : std::string("null"));
    out += ",\"nu\":" + (row.entropy ? fmt17(row.entropy->nu) : std::string("null"));
    out += ",\"significand\":" + (row.entropy ? fmt17(row.entropy->significand) : std::string("null"));
    out += ",\"exponent\":" + (row.entropy ? std::to_string(row.entropy->exponent) : std::string("null"));
    out += ",\"pass\":" + std::string(row.pass ? "true" : "false");
    if (!row.error.empty()) out += ",\"error\":" + detail::json_string(row.error);
    if (row.reference) {
      out += ",\"expected_constant\":" + fmt17(row.reference->constant_value);
      out += ",\"expected_significand\":" + fmt17(row.reference->significand);
      out += ",\"constant_abs_dev\":" + fmt17(row.constant_abs_dev);
      out += ",\"significand_rel_dev\":" + fmt17(row.significand_rel_dev);
    }
    out += "}\n";
  }
  return out;
}

/// Human-readable aligned table, 7 significant digits.
inline std::string to_table(const RunReport& report) {
  std::ostringstream out;
  auto pad = [](std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
  };
  out << pad("bundle", 18) << pad("metric", 22) << pad("constant", 24) << pad("nu", 36)
      << (report.compared ? "status" : "") << '\n';
  out << std::string(report.compared ? 106 : 100, '-') << '\n';
  for (const RowOutcome& row : report.rows) {
    std::string metric(family_name(row.family));
    if (row.m) metric += " m=" + fmt7(*row.m);
    if (row.eps) metric += " (" + row.eps->to_string() + ")";
    std::string constant = row.constant_name + " = " + (row.constant ? fmt7(*row.constant) : "-");
    std::string nu;
    if (row.entropy)
      nu = "log(" + fmt7(row.entropy->significand) + " e^-" + std::to_string(row.entropy->exponent) +
           ") = " + fmt7(row.entropy->nu);
    out << pad(row.bundle, 18) << pad(metric, 22) << pad(constant, 24) << pad(nu, 36);
    if (!row.error.empty())
      out << "ERROR: " << row.error;
    else if (report.compared)
      out << (row.pass ? "pass" : "FAIL");
    out << '\n';
  }
  out << '\n';
  std::size_t passed = 0;
  for (const RowOutcome& row : report.rows) passed += row.pass ? 1 : 0;
  out << passed << "/" << report.rows.size() << " rows pass";
  if (report.compared) {
    double worst_const = 0.0, worst_sig = 0.0;
    for (const RowOutcome& row : report.rows) {
      if (std::isfinite(row.constant_abs_dev)) worst_const = std::max(worst_const, row.constant_abs_dev);
      if (std::isfinite(row.significand_rel_dev)) worst_sig = std::max(worst_sig, row.significand_rel_dev);
    }
    out << "; worst |constant dev| = " << fmt7(worst_const) << ", worst significand rel dev = "
        << fmt7(worst_sig);
  }
  out << " (steps = " << report.cfg.steps << ", " << fmt7(report.elapsed_seconds) << " s)\n";
  return out.str();
}

// --- sweep and sample rendering ---------------------------------------------

inline std::string sweep_to_csv(const SweepReport& report) {
  std::string out = "m,constant,nu,significand,exponent,error\n";
  auto emit = [&](const SweepRow& row, bool is_krs) {
    out += is_krs ? "krs" : fmt17(row.m);
    out += ',';
    if (row.constant) out += fmt17(*row.constant);
    out += ',';
    if (row.nu) out += fmt17(*row.nu);
    out += ',';
    if (row.significand) out += fmt17(*row.significand);
    out += ',';
    if (row.nu) out += std::to_string(row.exponent);
    out += ',';
    out += detail::csv_quote(row.error);
    out += '\n';
  };
  for (const SweepRow& row : report.rows) emit(row, false);
  if (report.krs) emit(*report.krs, true);
  out += "# monotonicity," + report.monotonicity + "\n";
  return out;
}

inline std::string sweep_to_table(const SweepReport& report) {
  std::ostringstream out;
  auto pad = [](std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
  };
  out << "  " << pad("m", 10) << pad("constant", 14) << "nu\n";
  auto emit = [&](const SweepRow& row, const std::string& label) {
    out << "  " << pad(label, 10);
    if (!row.error.empty()) {
      out << "ERROR: " << row.error << '\n';
      return;
    }
    out << pad(fmt7(row.constant.value_or(0.0)), 14) << "log(" << fmt7(row.significand.value_or(0.0))
        << " e^-" << row.exponent << ") = " << fmt7(row.nu.value_or(0.0)) << '\n';
  };
  for (const SweepRow& row : report.rows) emit(row, fmt7(row.m));
  if (report.krs) emit(*report.krs, "krs");
  out << "monotonicity: " << report.monotonicity << '\n';
  return out.str();
}

inline std::string samples_to_csv(const MetricProfile& profile, const std::vector<ProfileSample>& samples) {
  std::string out = "s,alpha";
  for (int i = 1; i <= profile.bundle.r(); ++i) out += ",beta_" + std::to_string(i);
  out += ",f\n";
  for (const ProfileSample& sample : samples) {
    out += fmt17(sample.s);
    out += ',';
    out += fmt17(sample.alpha);
    for (double b : sample.betas) {
      out += ',';
      out += fmt17(b);
    }
    out += ',';
    out += fmt17(sample.f);
    out += '\n';
  }
  return out;
}

// --- minimal CSV reader (used for round-trip checks) -------------------------

inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
    } else {
      field += c;
    }
  }
  if (!field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ricci
