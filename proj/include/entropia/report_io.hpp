#pragma once

// Report serialization shared by the CLI and the test suite.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "entropia/verify.hpp"

namespace entropia {

inline constexpr const char* tool_version = "0.1.0";

/// 12 significant digits with a forced decimal point, e.g. "0.693147180560".
[[nodiscard]] inline std::string format_sig12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.12g", x);
  return buf;
}

/// Shortest exact round-trip representation, for machine-readable output.
[[nodiscard]] inline std::string format_exact(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

[[nodiscard]] inline nlohmann::ordered_json to_json(const Violation& v) {
  return {{"inputs", v.inputs},
          {"lhs", v.lhs},
          {"rhs", v.rhs},
          {"margin", v.margin}};
}

[[nodiscard]] inline nlohmann::ordered_json to_json(const ScanReport& r) {
  nlohmann::ordered_json violations = nlohmann::ordered_json::array();
  for (const auto& v : r.violations) violations.push_back(to_json(v));
  return {{"property", r.property},
          {"verdict", to_string(r.verdict)},
          {"tested", r.tested},
          {"violations", violations},
          {"elapsed_ms", r.elapsed_ms}};
}

[[nodiscard]] inline nlohmann::ordered_json reports_to_json(
    const std::string& command, const std::vector<ScanReport>& reports) {
  nlohmann::ordered_json rs = nlohmann::ordered_json::array();
  for (const auto& r : reports) rs.push_back(to_json(r));
  return {{"tool_version", tool_version}, {"command", command}, {"reports", rs}};
}

namespace detail {

[[nodiscard]] inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

[[nodiscard]] inline std::string join(const std::vector<std::string>& parts,
                                      const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace detail

/// One row per violation under the fixed header.
[[nodiscard]] inline std::string reports_to_csv(
    const std::vector<ScanReport>& reports) {
  std::string out = "property,inputs,lhs,rhs,margin\n";
  for (const auto& r : reports)
    for (const auto& v : r.violations)
      out += r.property + "," + detail::csv_quote(detail::join(v.inputs, ";")) +
             "," + format_exact(v.lhs) + "," + format_exact(v.rhs) + "," +
             format_exact(v.margin) + "\n";
  return out;
}

[[nodiscard]] inline std::string report_to_text(const ScanReport& r) {
  char head[160];
  std::snprintf(head, sizeof(head), "%-28s %-15s tested=%llu violations=%zu (%.1f ms)\n",
                r.property.c_str(), to_string(r.verdict),
                static_cast<unsigned long long>(r.tested), r.violations.size(),
                r.elapsed_ms);
  std::string out = head;
  for (const auto& v : r.violations)
    out += "  [" + detail::join(v.inputs, " ") + "] lhs=" + format_sig12(v.lhs) +
           " rhs=" + format_sig12(v.rhs) + " margin=" + format_sig12(v.margin) +
           "\n";
  return out;
}

[[nodiscard]] inline std::string reports_to_text(
    const std::vector<ScanReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += report_to_text(r);
  return out;
}

}  // namespace entropia
