#include "trajcx/report.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <map>
#include <string>

#include <json.hpp>

namespace trajcx {

using Json = nlohmann::ordered_json;

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "table") return ReportFormat::kTable;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json-lines") return ReportFormat::kJsonLines;
  return std::nullopt;
}

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return buffer;
}

std::string pair_flags(const PairComplexity& pc) {
  std::string out;
  auto add = [&out](const char* flag) {
    if (!out.empty()) out += '|';
    out += flag;
  };
  if (pc.empty_overlap) add("empty_overlap");
  if (pc.zero_velocity) add("zero_velocity");
  if (pc.frame_dependent) add("frame_dependent");
  return out;
}

namespace {

// Round-trips through the 9-digit text so JSON carries the same precision.
double rounded(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

std::vector<std::string> scenario_flags(const ScenarioComplexity& sc) {
  std::vector<std::string> out;
  if (sc.invprod_clamped) out.emplace_back("invprod_clamped");
  if (sc.invprod_dependent_pairs) out.emplace_back("invprod_dependent_pairs");
  return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

void write_csv(const Report& report, std::ostream& out) {
  const bool with_oracle = !report.oracle.empty();
  out << "aircraft_a,aircraft_b,cpsum,cpweight,cpinvpie,overlap_h,flags";
  if (with_oracle) out << ",mc_estimate,mc_stderr,mc_abs_diff";
  out << '\n';
  for (std::size_t i = 0; i < report.complexity.pairs.size(); ++i) {
    const PairComplexity& pc = report.complexity.pairs[i];
    out << pc.pair.first << ',' << pc.pair.second << ',' << format_number(pc.cpsum) << ','
        << format_number(pc.cpweight) << ',' << format_number(pc.cpinvpie) << ','
        << format_number(pc.overlap) << ',' << pair_flags(pc);
    if (with_oracle) {
      const OracleColumns& o = report.oracle[i];
      out << ',' << format_number(o.estimate) << ',' << format_number(o.std_error) << ','
          << format_number(o.abs_diff);
    }
    out << '\n';
  }
}

void write_json_lines(const Report& report, std::ostream& out) {
  const ScenarioComplexity& sc = report.complexity;
  for (std::size_t i = 0; i < sc.pairs.size(); ++i) {
    const PairComplexity& pc = sc.pairs[i];
    Json rec;
    rec["type"] = "pair";
    rec["scenario"] = report.scenario_name;
    rec["aircraft_a"] = pc.pair.first;
    rec["aircraft_b"] = pc.pair.second;
    rec["cpsum"] = rounded(pc.cpsum);
    rec["cpweight"] = rounded(pc.cpweight);
    rec["cpinvpie"] = rounded(pc.cpinvpie);
    rec["overlap_h"] = rounded(pc.overlap);
    Json flags = Json::array();
    if (pc.empty_overlap) flags.push_back("empty_overlap");
    if (pc.zero_velocity) flags.push_back("zero_velocity");
    if (pc.frame_dependent) flags.push_back("frame_dependent");
    rec["flags"] = std::move(flags);
    Json segments = Json::array();
    for (const SegmentIndicator& s : pc.segment_cps) {
      segments.push_back({{"t_start_h", rounded(s.t_start)},
                          {"t_end_h", rounded(s.t_end)},
                          {"cp", rounded(s.cp.value)},
                          {"cp_infinite", rounded(s.cp.value_infinite)}});
    }
    rec["segments"] = std::move(segments);
    if (!report.oracle.empty()) {
      rec["mc_estimate"] = rounded(report.oracle[i].estimate);
      rec["mc_stderr"] = rounded(report.oracle[i].std_error);
      rec["mc_abs_diff"] = rounded(report.oracle[i].abs_diff);
    }
    out << rec.dump() << '\n';
  }
  Json agg;
  agg["type"] = "aggregate";
  agg["scenario"] = report.scenario_name;
  agg["field"] = std::string(to_string(sc.field));
  agg["max"] = rounded(sc.agg_max);
  agg["sum"] = rounded(sc.agg_sum);
  agg["mean"] = rounded(sc.agg_mean);
  agg["invprod"] = rounded(sc.agg_invprod);
  agg["flags"] = scenario_flags(sc);
  out << agg.dump() << '\n';
}

void write_table(const Report& report, std::ostream& out) {
  const ScenarioComplexity& sc = report.complexity;
  const bool with_oracle = !report.oracle.empty();
  out << "scenario: " << report.scenario_name << '\n' << '\n';

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"a", "b", "cpsum", "cpweight", "cpinvpie", "overlap_h",
                                     "flags"};
  if (with_oracle) {
    header.insert(header.end(), {"mc_estimate", "mc_stderr", "mc_abs_diff"});
  }
  rows.push_back(header);
  for (std::size_t i = 0; i < sc.pairs.size(); ++i) {
    const PairComplexity& pc = sc.pairs[i];
    std::vector<std::string> row = {pc.pair.first,           pc.pair.second,
                                    format_number(pc.cpsum), format_number(pc.cpweight),
                                    format_number(pc.cpinvpie), format_number(pc.overlap),
                                    pair_flags(pc)};
    if (with_oracle) {
      row.push_back(format_number(report.oracle[i].estimate));
      row.push_back(format_number(report.oracle[i].std_error));
      row.push_back(format_number(report.oracle[i].abs_diff));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << std::left << std::setw(static_cast<int>(widths[c]) + 2) << row[c];
    }
    out << '\n';
  }

  // Symmetric matrix of the selected field; the diagonal is left blank.
  std::vector<std::string> ids;
  for (const PairComplexity& pc : sc.pairs) {
    for (const std::string& id : {pc.pair.first, pc.pair.second}) {
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
  }
  std::sort(ids.begin(), ids.end());
  std::map<std::pair<std::string, std::string>, double> lookup;
  for (const PairComplexity& pc : sc.pairs) {
    lookup[pc.pair] = select(pc, sc.field);
    lookup[{pc.pair.second, pc.pair.first}] = select(pc, sc.field);
  }
  std::size_t cell = 3;
  for (const std::string& id : ids) cell = std::max(cell, id.size());
  for (const auto& [key, value] : lookup) cell = std::max(cell, format_number(value).size());
  cell += 2;
  out << std::right << '\n' << to_string(sc.field) << " matrix:\n" << std::setw(static_cast<int>(cell)) << "";
  for (const std::string& id : ids) out << std::setw(static_cast<int>(cell)) << id;
  out << '\n';
  for (const std::string& row : ids) {
    out << std::setw(static_cast<int>(cell)) << row;
    for (const std::string& col : ids) {
      const auto it = lookup.find({row, col});
      out << std::setw(static_cast<int>(cell))
          << (row == col || it == lookup.end() ? std::string("-") : format_number(it->second));
    }
    out << '\n';
  }

  out << '\n'
      << "aggregate (" << to_string(sc.field) << "): max " << format_number(sc.agg_max)
      << "  sum " << format_number(sc.agg_sum) << "  mean " << format_number(sc.agg_mean)
      << "  invprod " << format_number(sc.agg_invprod) << '\n';
  if (const auto flags = scenario_flags(sc); !flags.empty()) {
    out << "flags: " << join(flags, ", ") << '\n';
  }
}

}  // namespace

void write_report(const Report& report, ReportFormat format, std::ostream& out) {
  switch (format) {
    case ReportFormat::kTable: write_table(report, out); break;
    case ReportFormat::kCsv: write_csv(report, out); break;
    case ReportFormat::kJsonLines: write_json_lines(report, out); break;
  }
}

}  // namespace trajcx
