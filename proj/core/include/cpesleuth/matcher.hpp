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

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cpesleuth/catalog.hpp"
#include "cpesleuth/model.hpp"
#include "cpesleuth/sanitizer.hpp"

namespace cpesleuth {

/// Length of the longest common subsequence of two byte strings
/// (bit-parallel, O(|a| * ceil(|b| / 64))).
std::size_t lcs_length(std::string_view a, std::string_view b);

/// Normalized indel similarity: 100 * 2 * LCS / (|a| + |b|).
/// Two empty strings are identical (100); one empty string scores 0.
Rational similarity(std::string_view a, std::string_view b);

/// Scores each candidate against the sanitized name, using the better of the
/// title and product keys, and applies the threshold of the candidate's tier.
std::vector<TraceEntry> score_candidates(const SanitizedSoftware& software,
                                         std::span<const MatchCandidate> candidates,
                                         const MatchConfig& config);

/// Highest passing score; ties go to the lower weight, then non-deprecated,
/// then the smallest CPE string. The result does not depend on trace order.
std::optional<MatchedCpe> select_best(std::span<const TraceEntry> trace);

/// sanitize -> union_candidates -> score_candidates -> select_best.
MatchResult match_software(const SoftwareRecord& record, const Catalog& catalog,
                           const SanitizerRules& rules, const MatchConfig& config);

/// Matches every record, optionally on several threads. Results keep input
/// order. `threads == 0` picks the hardware concurrency.
std::vector<MatchResult> match_inventory(std::span<const SoftwareRecord> records,
                                         const Catalog& catalog, const SanitizerRules& rules,
                                         const MatchConfig& config, unsigned threads = 1);

}  // namespace cpesleuth
