#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "trajcx/aggregation.hpp"
#include "trajcx/oracle.hpp"

namespace trajcx {

enum class ReportFormat { kTable, kCsv, kJsonLines };

std::optional<ReportFormat> parse_report_format(std::string_view name);

// Monte-Carlo comparison for one pair, against the analytical cpinvpie.
struct OracleColumns {
  double estimate = 0.0;
  double std_error = 0.0;
  double abs_diff = 0.0;
};

struct Report {
  std::string scenario_name;
  ScenarioComplexity complexity;
  std::vector<OracleColumns> oracle;  // empty, or one entry per pair
};

// Nine significant digits, as every numeric report field is printed.
std::string format_number(double value);

// Flags of one pair, '|' separated; empty when none apply.
std::string pair_flags(const PairComplexity& pc);

void write_report(const Report& report, ReportFormat format, std::ostream& out);

}  // namespace trajcx
