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

#include "cpesleuth/comparison.hpp"
#include "fixtures.hpp"

using namespace cpesleuth;

namespace {

std::set<std::string> detected_names(const DetectionReport& report, std::string_view strategy) {
  std::set<std::string> out;
  for (const auto& app : report.per_app) {
    if (app.detected_by.contains(std::string(strategy))) out.insert(app.name);
  }
  return out;
}

TEST(TrimTrailingZeros, Examples) {
  EXPECT_EQ(trim_trailing_zero_segments("8.0.22.0"), "8.0.22");
  EXPECT_EQ(trim_trailing_zero_segments("5.0"), "5");
  EXPECT_EQ(trim_trailing_zero_segments("5.0.0"), "5");
  EXPECT_EQ(trim_trailing_zero_segments("1.0.3"), "1.0.3");
  EXPECT_EQ(trim_trailing_zero_segments("10"), "10");
  EXPECT_EQ(trim_trailing_zero_segments("2.10"), "2.10");
}

TEST(BaselineMatch, ExactNameHit) {
  const auto catalog = fixtures::load_table("six_apps");
  const SoftwareRecord vlc{"VLC Media Player", "VideoLAN", "1.0.3", std::nullopt, 2};
  EXPECT_EQ(baseline_match(vlc, catalog), "cpe:2.3:a:videolan:vlc_media_player:1.0.3:*:*:*:*:*:*:*");
}

TEST(BaselineMatch, DecoratedNameMisses) {
  const auto catalog = fixtures::load_table("six_apps");
  const SoftwareRecord firefox{"Mozilla Firefox 19.0 beta1", "Mozilla", "19.0", std::nullopt, 4};
  EXPECT_FALSE(baseline_match(firefox, catalog));
  const SoftwareRecord acrobat{"Adobe Acrobat (64-bit)", "Adobe Inc.", "5.0", std::nullopt, 1};
  EXPECT_FALSE(baseline_match(acrobat, catalog));
}

TEST(BaselineMatch, EmptyCatalog) {
  const Catalog empty;
  const SoftwareRecord r{"VLC Media Player", "VideoLAN", "1.0.3", std::nullopt, 1};
  EXPECT_FALSE(baseline_match(r, empty));
}

TEST(BaselineMatch, IgnoresDeprecatedEntries) {
  const auto catalog = fixtures::load_table("six_apps");
  const SoftwareRecord skype{"Skype", "Microsoft", "7.16.0.102", std::nullopt, 1};
  EXPECT_FALSE(baseline_match(skype, catalog));
}

TEST(RunComparison, SixApps) {
  const auto catalog = fixtures::load_table("six_apps");
  const auto run = run_comparison(catalog.inventory(), catalog, SanitizerRules::defaults(), MatchConfig{});
  EXPECT_EQ(detected_names(run.report, kBaselineStrategy),
            (std::set<std::string>{"VLC Media Player", "Oracle VM VirtualBox"}));
  EXPECT_EQ(detected_names(run.report, kEnhancedStrategy),
            (std::set<std::string>{"Adobe Acrobat (64-bit)", "VLC Media Player", "Oracle VM VirtualBox",
                                   "Mozilla Firefox 19.0 beta1"}));
  EXPECT_EQ(run.report.per_app.size(), 6u);
  EXPECT_EQ(run.findings.size(), 4u);
}

TEST(RunComparison, TenAppsRates) {
  const auto catalog = fixtures::load_table("ten_apps");
  const auto run = run_comparison(catalog.inventory(), catalog, SanitizerRules::defaults(), MatchConfig{});
  const auto& b = run.report.per_strategy.at("baseline");
  const auto& e = run.report.per_strategy.at("enhanced");
  EXPECT_EQ(b, (StrategyStats{5, 10, Rational(1, 2)}));
  EXPECT_EQ(e, (StrategyStats{7, 10, Rational(7, 10)}));
  ASSERT_TRUE(run.report.improvement_rate);
  EXPECT_EQ(*run.report.improvement_rate, Rational(40));
}

TEST(RunComparison, EmptyInventory) {
  const auto catalog = fixtures::load_table("ten_apps");
  const auto run = run_comparison({}, catalog, SanitizerRules::defaults(), MatchConfig{});
  EXPECT_EQ(run.report.per_strategy.at("baseline"), (StrategyStats{0, 0, std::nullopt}));
  EXPECT_FALSE(run.report.improvement_rate);
  EXPECT_TRUE(run.report.per_app.empty());
}

TEST(RunComparison, NoBaselineHitsMeansNoImprovementRate) {
  const auto catalog = fixtures::load_table("six_apps");
  const std::vector<SoftwareRecord> inv{{"Adobe Acrobat (64-bit)", "Adobe Inc.", "5.0", std::nullopt, 1}};
  const auto run = run_comparison(inv, catalog, SanitizerRules::defaults(), MatchConfig{});
  EXPECT_EQ(run.report.per_strategy.at("baseline").detected, 0u);
  EXPECT_EQ(run.report.per_strategy.at("enhanced").detected, 1u);
  EXPECT_FALSE(run.report.improvement_rate);
}

// On the frozen tables everything the baseline finds, the enhanced matcher
// finds too.
TEST(RunComparison, EnhancedCoversBaselineOnFixtures) {
  for (const auto* table : {"six_apps", "ten_apps"}) {
    const auto catalog = fixtures::load_table(table);
    const auto run = run_comparison(catalog.inventory(), catalog, SanitizerRules::defaults(), MatchConfig{});
    for (const auto& app : run.report.per_app) {
      if (app.detected_by.contains("baseline")) EXPECT_TRUE(app.detected_by.contains("enhanced")) << app.name;
    }
  }
}

TEST(SummarizeEnhanced, CountsFindings) {
  const auto catalog = fixtures::load_table("ten_apps");
  const auto run = run_comparison(catalog.inventory(), catalog, SanitizerRules::defaults(), MatchConfig{});
  const auto summary = summarize_enhanced(catalog.inventory(), run.findings);
  EXPECT_EQ(summary.per_strategy.size(), 1u);
  EXPECT_EQ(summary.per_strategy.at("enhanced"), run.report.per_strategy.at("enhanced"));
  EXPECT_FALSE(summary.improvement_rate);
}

}  // namespace
