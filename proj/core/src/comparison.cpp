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

#include "cpesleuth/comparison.hpp"

#include <algorithm>
#include <unordered_set>

#include "cpesleuth/matcher.hpp"
#include "text.hpp"

namespace cpesleuth {
namespace {

struct BaselineKey {
  std::string name;
  std::string vendor;  // CPE vendor form
  std::string version;
};

std::string strip_suffix_punct(std::string_view token) {
  while (!token.empty() && (token.back() == ',' || token.back() == '.')) token.remove_suffix(1);
  return std::string(token);
}

// Lowercase, then drop trailing corporate suffix tokens ("inc.", "llc").
std::string baseline_text(std::string_view raw, const SanitizerRules& rules, bool keep_first) {
  const auto lowered = text::to_lower_ascii(text::trim(raw));
  std::vector<std::string> tokens;
  for (const auto t : text::split_ws(lowered)) tokens.emplace_back(t);
  const std::size_t floor = keep_first ? 1 : 0;
  while (tokens.size() > floor && rules.is_stopword(strip_suffix_punct(tokens.back()))) {
    tokens.pop_back();
  }
  if (!tokens.empty()) {
    auto& last = tokens.back();
    while (!last.empty() && last.back() == ',') last.pop_back();
    if (last.empty()) tokens.pop_back();
  }
  return text::join(tokens, " ");
}

BaselineKey baseline_key(const SoftwareRecord& r, const SanitizerRules& rules) {
  auto vendor = baseline_text(r.raw_vendor, rules, false);
  std::replace(vendor.begin(), vendor.end(), ' ', '_');
  return {baseline_text(r.raw_name, rules, true), std::move(vendor),
          trim_trailing_zero_segments(text::to_lower_ascii(text::trim(r.raw_version)))};
}

bool baseline_tier(const CpeEntry& e, const BaselineKey& k, int tier) {
  if (k.name.empty() || k.version.empty() || !e.name.version.is_literal() ||
      trim_trailing_zero_segments(e.name.version.value()) != k.version) {
    return false;
  }
  const bool vendor_eq =
      !k.vendor.empty() && e.name.vendor.is_literal() && e.name.vendor.value() == k.vendor;
  switch (tier) {
    case 1: return vendor_eq && e.title_norm == k.name;
    case 2: return vendor_eq && e.product_norm == k.name;
    case 3: return e.title_norm == k.name || e.product_norm == k.name;
    case 4: return e.title_norm == k.name;
    default: return false;
  }
}

bool detects(const std::optional<std::string>& cpe, const Catalog& catalog) {
  return cpe && !cves_for_cpe(*cpe, catalog).empty();
}

StrategyStats stats(std::size_t detected, std::size_t total) {
  StrategyStats s{detected, total, std::nullopt};
  if (total > 0) {
    s.rate = Rational(static_cast<std::int64_t>(detected), static_cast<std::int64_t>(total));
  }
  return s;
}

}  // namespace

std::string trim_trailing_zero_segments(std::string_view version) {
  std::string v(version);
  while (v.size() > 2 && v.ends_with(".0")) v.resize(v.size() - 2);
  return v;
}

std::optional<std::string> baseline_match(const SoftwareRecord& record, const Catalog& catalog,
                                          const SanitizerRules& rules) {
  const auto key = baseline_key(record, rules);
  if (key.name.empty() || key.version.empty()) return std::nullopt;

  // every baseline tier needs title_norm or product_norm equal to the name
  std::vector<std::reference_wrapper<const CpeEntry>> pool = catalog.by_title(key.name);
  for (const auto& e : catalog.by_product(key.name)) pool.push_back(e);

  std::optional<std::pair<int, std::string>> best;
  for (const auto& ref : pool) {
    const CpeEntry& entry = ref.get();
    if (entry.deprecated) continue;
    for (int tier = 1; tier <= kTierCount; ++tier) {
      if (!baseline_tier(entry, key, tier)) continue;
      std::pair<int, std::string> hit{tier, entry.cpe23()};
      if (!best || hit < *best) best = std::move(hit);
      break;
    }
  }
  if (!best) return std::nullopt;
  return best->second;
}

ComparisonRun run_comparison(std::span<const SoftwareRecord> inventory, const Catalog& catalog,
                             const SanitizerRules& rules, const MatchConfig& config) {
  ComparisonRun run;
  run.enhanced_results = match_inventory(inventory, catalog, rules, config);
  run.findings = build_findings(run.enhanced_results, catalog);

  std::unordered_set<RecordId> enhanced_hits;
  for (const auto& f : run.findings) enhanced_hits.insert(f.software.record_id);

  std::size_t baseline_detected = 0;
  for (const auto& record : inventory) {
    AppOutcome app{record.record_id, record.raw_name, record.raw_version, {}};
    if (detects(baseline_match(record, catalog, rules), catalog)) {
      app.detected_by.emplace(kBaselineStrategy);
      ++baseline_detected;
    }
    if (enhanced_hits.contains(record.record_id)) app.detected_by.emplace(kEnhancedStrategy);
    run.report.per_app.push_back(std::move(app));
  }

  const auto baseline = stats(baseline_detected, inventory.size());
  const auto enhanced = stats(enhanced_hits.size(), inventory.size());
  run.report.per_strategy.emplace(kBaselineStrategy, baseline);
  run.report.per_strategy.emplace(kEnhancedStrategy, enhanced);
  if (baseline.rate && enhanced.rate && *baseline.rate > Rational{0}) {
    run.report.improvement_rate = (*enhanced.rate - *baseline.rate) / *baseline.rate * Rational{100};
  }
  return run;
}

DetectionReport summarize_enhanced(std::span<const SoftwareRecord> inventory,
                                   std::span<const VulnerabilityFinding> findings) {
  std::unordered_set<RecordId> hits;
  for (const auto& f : findings) hits.insert(f.software.record_id);
  DetectionReport report;
  std::size_t detected = 0;
  for (const auto& record : inventory) {
    AppOutcome app{record.record_id, record.raw_name, record.raw_version, {}};
    if (hits.contains(record.record_id)) {
      app.detected_by.emplace(kEnhancedStrategy);
      ++detected;
    }
    report.per_app.push_back(std::move(app));
  }
  report.per_strategy.emplace(kEnhancedStrategy, stats(detected, inventory.size()));
  return report;
}

}  // namespace cpesleuth
