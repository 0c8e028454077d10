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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cpesleuth/report.hpp"
#include "fixtures.hpp"

using namespace cpesleuth;

namespace {

VulnerabilityFinding finding(std::string name, std::string version, std::string description) {
  return {{std::move(name), "Vendor", std::move(version), std::nullopt, 1},
          "cpe:2.3:a:v:p:1:*:*:*:*:*:*:*",
          {{"CVE-2020-1234", Severity::High, 7.5, std::move(description)}}};
}

TEST(ReportFormat, Parse) {
  EXPECT_EQ(parse_report_format("json"), ReportFormat::Json);
  EXPECT_EQ(parse_report_format("CSV"), ReportFormat::Csv);
  EXPECT_EQ(parse_report_format("text-table"), ReportFormat::Table);
  try {
    parse_report_format("xml");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedFormat);
  }
}

TEST(JsonReport, EmptyFindings) {
  const auto doc = nlohmann::json::parse(emit_report(std::nullopt, {}, ReportFormat::Json));
  EXPECT_EQ(doc, nlohmann::json::parse(R"({"findings":[],"report":null})"));
}

TEST(JsonReport, TimestampOnlyWhenGiven) {
  ReportOptions opts;
  opts.timestamp = "2026-01-01T00:00:00Z";
  const auto doc = nlohmann::json::parse(emit_report(std::nullopt, {}, ReportFormat::Json, opts));
  EXPECT_EQ(doc.at("generated_at"), "2026-01-01T00:00:00Z");
}

TEST(JsonReport, ComparisonShape) {
  const auto catalog = fixtures::load_table("ten_apps");
  const auto run = run_comparison(catalog.inventory(), catalog, SanitizerRules::defaults(), MatchConfig{});
  const auto doc = nlohmann::json::parse(emit_report(run.report, run.findings, ReportFormat::Json));
  EXPECT_EQ(doc.at("findings").size(), 7u);
  const auto& report = doc.at("report");
  EXPECT_EQ(report.at("per_strategy").at("baseline").at("rate").at("percent"), "50.00");
  EXPECT_EQ(report.at("per_strategy").at("enhanced").at("detected"), 7);
  EXPECT_EQ(report.at("improvement_rate").at("percent"), "40.00");
  EXPECT_EQ(report.at("per_app").size(), 10u);
  const auto& first = doc.at("findings").at(0);
  EXPECT_EQ(first.at("software"), "Winamp");
  EXPECT_TRUE(first.at("cves").at(0).contains("cvss"));
}

TEST(CsvReport, HeaderAndQuoting) {
  const std::vector<VulnerabilityFinding> f{finding("Tool, \"Pro\"", "1.0", "x")};
  const auto csv = emit_report(std::nullopt, f, ReportFormat::Csv);
  EXPECT_EQ(csv,
            "software,version,cpe,cve_id,severity,cvss\r\n"
            "\"Tool, \"\"Pro\"\"\",1.0,cpe:2.3:a:v:p:1:*:*:*:*:*:*:*,CVE-2020-1234,HIGH,7.5\r\n");
}

TEST(CsvReport, MissingScoreIsEmptyField) {
  auto f = finding("Tool", "1", "x");
  f.cves[0].cvss_score.reset();
  const std::vector<VulnerabilityFinding> fs{f};
  const auto csv = emit_report(std::nullopt, fs, ReportFormat::Csv);
  EXPECT_TRUE(csv.ends_with(",CVE-2020-1234,HIGH,\r\n")) << csv;
}

TEST(TableReport, YesBlankAndTotals) {
  DetectionReport r;
  r.per_strategy.emplace("baseline", StrategyStats{1, 2, Rational(1, 2)});
  r.per_strategy.emplace("enhanced", StrategyStats{2, 2, Rational(1)});
  r.per_app.push_back({1, "Alpha", "1.0", {"baseline", "enhanced"}});
  r.per_app.push_back({2, "Beta", "2.0", {"enhanced"}});
  r.improvement_rate = Rational(100);
  const auto table = emit_report(r, {}, ReportFormat::Table);
  EXPECT_NE(table.find("| Application    | Version | baseline | enhanced |"), std::string::npos) << table;
  EXPECT_NE(table.find("| Alpha          | 1.0     | Yes      | Yes      |"), std::string::npos) << table;
  EXPECT_NE(table.find("| Beta           | 2.0     |          | Yes      |"), std::string::npos) << table;
  EXPECT_NE(table.find("| Total Detected |         | 1 apps   | 2 apps   |"), std::string::npos) << table;
  EXPECT_NE(table.find("baseline rate: 50.00% (1/2)"), std::string::npos);
  EXPECT_NE(table.find("improvement: 100.00%"), std::string::npos);
  EXPECT_NE(table.find("0 vulnerable programs"), std::string::npos);
}

TEST(Report, ByteStable) {
  const auto catalog = fixtures::load_table("six_apps");
  const auto run = run_comparison(catalog.inventory(), catalog, SanitizerRules::defaults(), MatchConfig{});
  for (const auto fmt : {ReportFormat::Json, ReportFormat::Csv, ReportFormat::Table}) {
    EXPECT_EQ(emit_report(run.report, run.findings, fmt), emit_report(run.report, run.findings, fmt));
  }
}

TEST(Report, InvalidUtf8IsReplacedInJson) {
  const std::vector<VulnerabilityFinding> f{finding("Tool", "1", "bad \xff byte")};
  EXPECT_NO_THROW(nlohmann::json::parse(emit_report(std::nullopt, f, ReportFormat::Json)));
}

}  // namespace
