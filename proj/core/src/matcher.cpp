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

#include "cpesleuth/matcher.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <thread>

namespace cpesleuth {

std::size_t lcs_length(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) return 0;
  // Allison-Dix / Hyyro: bit i of V is cleared when b[0..i] extends the LCS.
  const std::size_t words = (b.size() + 63) / 64;
  std::array<std::vector<std::uint64_t>, 256> match_masks;
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto& mask = match_masks[static_cast<unsigned char>(b[i])];
    if (mask.empty()) mask.assign(words, 0);
    mask[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  std::vector<std::uint64_t> v(words, ~std::uint64_t{0});
  for (const char ch : a) {
    const auto& mask = match_masks[static_cast<unsigned char>(ch)];
    if (mask.empty()) continue;
    std::uint64_t carry = 0;
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t u = v[w] & mask[w];
      const std::uint64_t sum1 = v[w] + u;
      const std::uint64_t c1 = sum1 < v[w] ? 1 : 0;
      const std::uint64_t sum = sum1 + carry;
      const std::uint64_t c2 = sum < sum1 ? 1 : 0;
      carry = c1 | c2;
      v[w] = sum | (v[w] - u);
    }
  }
  std::size_t zeros = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t word = ~v[w];
    if (w + 1 == words && b.size() % 64 != 0) word &= (std::uint64_t{1} << (b.size() % 64)) - 1;
    zeros += static_cast<std::size_t>(std::popcount(word));
  }
  return zeros;
}

Rational similarity(std::string_view a, std::string_view b) {
  const auto total = a.size() + b.size();
  if (total == 0) return Rational{100};
  const auto lcs = lcs_length(a, b);
  return Rational(static_cast<std::int64_t>(200 * lcs), static_cast<std::int64_t>(total));
}

std::vector<TraceEntry> score_candidates(const SanitizedSoftware& software,
                                         std::span<const MatchCandidate> candidates,
                                         const MatchConfig& config) {
  std::vector<TraceEntry> trace;
  trace.reserve(candidates.size());
  for (const auto& candidate : candidates) {
    const CpeEntry& entry = candidate.entry.get();
    const auto score = std::max(similarity(software.name, entry.title_norm),
                                similarity(software.name, entry.product_norm));
    trace.push_back(TraceEntry{
        .cpe_string = entry.cpe23(),
        .weight = candidate.weight,
        .score = score,
        .passed_threshold = score >= config.threshold(candidate.weight),
        .deprecated = entry.deprecated,
    });
  }
  return trace;
}

std::optional<MatchedCpe> select_best(std::span<const TraceEntry> trace) {
  const TraceEntry* best = nullptr;
  auto better = [](const TraceEntry& a, const TraceEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.weight != b.weight) return a.weight < b.weight;
    if (a.deprecated != b.deprecated) return !a.deprecated;
    return a.cpe_string < b.cpe_string;
  };
  for (const auto& entry : trace) {
    if (!entry.passed_threshold) continue;
    if (best == nullptr || better(entry, *best)) best = &entry;
  }
  if (best == nullptr) return std::nullopt;
  return MatchedCpe{best->cpe_string, best->score, best->weight};
}

MatchResult match_software(const SoftwareRecord& record, const Catalog& catalog,
                           const SanitizerRules& rules, const MatchConfig& config) {
  MatchResult result;
  result.software = record;
  try {
    result.sanitized = sanitize_record(record, rules);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyAfterSanitize) throw;
    result.error = e.what();
    return result;
  }
  const auto candidates = catalog.union_candidates(*result.sanitized, config.include_deprecated);
  result.trace = score_candidates(*result.sanitized, candidates, config);
  result.matched = select_best(result.trace);
  return result;
}

std::vector<MatchResult> match_inventory(std::span<const SoftwareRecord> records,
                                         const Catalog& catalog, const SanitizerRules& rules,
                                         const MatchConfig& config, unsigned threads) {
  std::vector<MatchResult> results(records.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, records.size())));

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      results[i] = match_software(records[i], catalog, rules, config);
    }
  };
  if (threads <= 1) {
    work(0, records.size());
    return results;
  }
  const std::size_t chunk = (records.size() + threads - 1) / threads;
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      const auto begin = std::min(records.size(), t * chunk);
      const auto end = std::min(records.size(), begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace cpesleuth
