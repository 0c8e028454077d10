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

#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cpesleuth/catalog.hpp"
#include "cpesleuth/cve_mapper.hpp"
#include "cpesleuth/model.hpp"
#include "cpesleuth/sanitizer.hpp"

namespace cpesleuth {

inline constexpr std::string_view kBaselineStrategy = "baseline";
inline constexpr std::string_view kEnhancedStrategy = "enhanced";

/// The exact-match baseline: lowercase, drop trailing corporate suffixes,
/// trim trailing ".0" version segments (on both sides of the comparison),
/// then the four tier predicates with exact equality only. Returns the
/// lowest-weight hit (ties: smallest CPE string). Deprecated entries never
/// match.
std::optional<std::string> baseline_match(const SoftwareRecord& record, const Catalog& catalog,
                                          const SanitizerRules& rules = SanitizerRules::defaults());

/// "8.0.22.0" -> "8.0.22", "5.0" -> "5", "1.0.3" unchanged.
std::string trim_trailing_zero_segments(std::string_view version);

struct StrategyStats {
  std::size_t detected = 0;
  std::size_t total = 0;
  /// detected / total; absent when total is 0.
  std::optional<Rational> rate;

  bool operator==(const StrategyStats&) const = default;
};

struct AppOutcome {
  RecordId record_id = 0;
  std::string name;
  std::string version;
  std::set<std::string> detected_by;

  bool operator==(const AppOutcome&) const = default;
};

struct DetectionReport {
  std::map<std::string, StrategyStats, std::less<>> per_strategy;
  std::vector<AppOutcome> per_app;
  /// (enhanced - baseline) / baseline * 100; absent unless both strategies
  /// ran and the baseline rate is positive.
  std::optional<Rational> improvement_rate;

  bool operator==(const DetectionReport&) const = default;
};

struct ComparisonRun {
  DetectionReport report;
  std::vector<MatchResult> enhanced_results;
  std::vector<VulnerabilityFinding> findings;
};

/// Runs both strategies over `inventory`. A strategy detects a record when
/// its match maps to at least one applicable CVE.
ComparisonRun run_comparison(std::span<const SoftwareRecord> inventory, const Catalog& catalog,
                             const SanitizerRules& rules, const MatchConfig& config);

/// Single-strategy summary of an enhanced run (used by scan/report).
DetectionReport summarize_enhanced(std::span<const SoftwareRecord> inventory,
                                   std::span<const VulnerabilityFinding> findings);

}  // namespace cpesleuth
