#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ncaz/check_result.hpp"
#include "ncaz/suite.hpp"

namespace ncaz {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class ReportFormat { Json, Csv };

/// {version, config, records: [...], summary: {...}}. Reals are written as
/// shortest round-trip decimals; NaN and infinities as the strings "nan",
/// "inf", "-inf". The thread count is not part of the serialized config.
std::string report_to_json(const SuiteConfig& cfg, const std::vector<CheckResult>& records);

/// One header line plus one row per record; params and aux are packed into
/// "key=value;..." cells.
std::string report_to_csv(const std::vector<CheckResult>& records);

std::string record_to_json(const CheckResult& r);
CheckResult record_from_json(std::string_view text);

/// Records of a document produced by report_to_json. Throws ParameterError on malformed input.
std::vector<CheckResult> records_from_report(std::string_view text);

/// Shortest decimal that parses back to the same double.
std::string format_real(double x);

}  // namespace ncaz
