// Copyright 2026 The cpesleuth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cpesleuth/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "text.hpp"

namespace cpesleuth {
namespace {

using ojson = nlohmann::ordered_json;

std::string format_cvss(const std::optional<double>& score) {
  if (!score) return {};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.1f", *score);
  return buf;
}

ojson rational_json(const std::optional<Rational>& r, bool as_percent) {
  if (!r) return nullptr;
  const Rational shown = as_percent ? *r * Rational{100} : *r;
  ojson j;
  j["numerator"] = r->numerator();
  j["denominator"] = r->denominator();
  j["percent"] = shown.to_fixed(2);
  return j;
}

ojson report_json(const DetectionReport& report) {
  ojson strategies = ojson::object();
  for (const auto& [name, stats] : report.per_strategy) {
    strategies[name] = {{"detected", stats.detected},
                        {"total", stats.total},
                        {"rate", rational_json(stats.rate, true)}};
  }
  ojson apps = ojson::array();
  for (const auto& app : report.per_app) {
    apps.push_back({{"record_id", app.record_id},
                    {"name", app.name},
                    {"version", app.version},
                    {"detected_by", std::vector<std::string>(app.detected_by.begin(),
                                                             app.detected_by.end())}});
  }
  ojson improvement = nullptr;
  if (report.improvement_rate) {
    improvement = {{"numerator", report.improvement_rate->numerator()},
                   {"denominator", report.improvement_rate->denominator()},
                   {"percent", report.improvement_rate->to_fixed(2)}};
  }
  return {{"per_strategy", strategies}, {"per_app", apps}, {"improvement_rate", improvement}};
}

std::string emit_json(const std::optional<DetectionReport>& report,
                      std::span<const VulnerabilityFinding> findings, const ReportOptions& options) {
  ojson doc = ojson::object();
  if (options.timestamp) doc["generated_at"] = *options.timestamp;
  ojson list = ojson::array();
  for (const auto& f : findings) {
    ojson cves = ojson::array();
    for (const auto& c : f.cves) {
      cves.push_back({{"cve_id", c.cve_id},
                      {"severity", to_string(c.severity)},
                      {"cvss", c.cvss_score ? ojson(*c.cvss_score) : ojson(nullptr)},
                      {"description", c.description}});
    }
    list.push_back({{"record_id", f.software.record_id},
                    {"software", f.software.raw_name},
                    {"vendor", f.software.raw_vendor},
                    {"version", f.software.raw_version},
                    {"cpe", f.cpe_string},
                    {"cves", cves}});
  }
  doc["findings"] = std::move(list);
  doc["report"] = report ? report_json(*report) : ojson(nullptr);
  return doc.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

std::string csv_field(std::string_view v) {
  if (v.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(v);
  std::string out = "\"";
  for (const char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string emit_csv(std::span<const VulnerabilityFinding> findings) {
  std::string out = "software,version,cpe,cve_id,severity,cvss\r\n";
  for (const auto& f : findings) {
    for (const auto& c : f.cves) {
      out += csv_field(f.software.raw_name) + ',' + csv_field(f.software.raw_version) + ',' +
             csv_field(f.cpe_string) + ',' + csv_field(c.cve_id) + ',' +
             csv_field(to_string(c.severity)) + ',' + format_cvss(c.cvss_score) + "\r\n";
    }
  }
  return out;
}

// Plain fixed-width grid; column widths fit the widest cell (byte length).
std::string render_grid(const std::vector<std::vector<std::string>>& rows, std::size_t footer) {
  if (rows.empty()) return {};
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string rule = "+";
  for (const auto w : width) rule += std::string(w + 2, '-') + '+';
  rule += '\n';

  std::string out = rule;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line = "|";
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      line += ' ' + rows[r][i] + std::string(width[i] - rows[r][i].size(), ' ') + " |";
    }
    out += line + '\n';
    if (r + 1 < rows.size() && (r == 0 || r + footer + 1 == rows.size())) out += rule;
  }
  return out + rule;
}

std::string emit_table(const std::optional<DetectionReport>& report,
                       std::span<const VulnerabilityFinding> findings) {
  std::ostringstream out;
  if (report) {
    std::vector<std::string> strategies;
    for (const auto& [name, _] : report->per_strategy) strategies.push_back(name);
    // baseline first, as in a before/after table
    std::stable_sort(strategies.begin(), strategies.end(), [](const auto& a, const auto& b) {
      return (a == kBaselineStrategy) > (b == kBaselineStrategy);
    });

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"Application", "Version"};
    header.insert(header.end(), strategies.begin(), strategies.end());
    rows.push_back(std::move(header));
    for (const auto& app : report->per_app) {
      std::vector<std::string> row{app.name, app.version};
      for (const auto& s : strategies) row.push_back(app.detected_by.contains(s) ? "Yes" : "");
      rows.push_back(std::move(row));
    }
    std::vector<std::string> total{"Total Detected", ""};
    for (const auto& s : strategies) {
      const auto& stats = report->per_strategy.find(s)->second;
      total.push_back(std::to_string(stats.detected) + " apps");
    }
    rows.push_back(std::move(total));
    out << render_grid(rows, 1);

    for (const auto& s : strategies) {
      const auto& stats = report->per_strategy.find(s)->second;
      out << s << " rate: "
          << (stats.rate ? (*stats.rate * Rational{100}).to_fixed(2) + "%" : std::string("n/a"))
          << " (" << stats.detected << '/' << stats.total << ")\n";
    }
    if (report->improvement_rate) {
      out << "improvement: " << report->improvement_rate->to_fixed(2) << "%\n";
    }
    out << '\n';
  }

  std::vector<std::vector<std::string>> rows{{"Software", "Version", "CPE", "CVE", "Severity", "CVSS"}};
  for (const auto& f : findings) {
    for (const auto& c : f.cves) {
      rows.push_back({f.software.raw_name, f.software.raw_version, f.cpe_string, c.cve_id,
                      std::string(to_string(c.severity)), format_cvss(c.cvss_score)});
    }
  }
  out << render_grid(rows, 0);
  out << findings.size() << " vulnerable programs\n";
  return out.str();
}

}  // namespace

ReportFormat parse_report_format(std::string_view value) {
  const auto lowered = text::to_lower_ascii(text::trim(value));
  if (lowered == "json") return ReportFormat::Json;
  if (lowered == "csv") return ReportFormat::Csv;
  if (lowered == "table" || lowered == "text-table" || lowered == "text") return ReportFormat::Table;
  throw Error(ErrorCode::UnsupportedFormat, "unsupported report format: " + std::string(value));
}

std::string_view to_string(ReportFormat format) noexcept {
  switch (format) {
    case ReportFormat::Json: return "json";
    case ReportFormat::Csv: return "csv";
    case ReportFormat::Table: return "table";
  }
  return "json";
}

std::string emit_report(const std::optional<DetectionReport>& report,
                        std::span<const VulnerabilityFinding> findings, ReportFormat format,
                        const ReportOptions& options) {
  switch (format) {
    case ReportFormat::Json: return emit_json(report, findings, options);
    case ReportFormat::Csv: return emit_csv(findings);
    case ReportFormat::Table: return emit_table(report, findings);
  }
  throw Error(ErrorCode::UnsupportedFormat, "unsupported report format");
}

}  // namespace cpesleuth
