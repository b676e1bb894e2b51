#pragma once

#include <string>

#include <json.hpp>

namespace sosfit {

/// Reports are nlohmann JSON objects with a versioned schema
/// ("schema": "sosfit-report/1"). The text table shown on stdout is a pure
/// function of the structured report, so parsing the JSON and re-rendering
/// reproduces the displayed text byte for byte.
using Report = nlohmann::json;

inline constexpr const char* kReportSchema = "sosfit-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

/// Render the human-readable view of a report (any command).
std::string render_report(const Report& report);

/// Format with 6 significant digits, the table display convention.
std::string format_sig(double v);

}  // namespace sosfit
