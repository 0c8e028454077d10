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

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cpesleuth/catalog.hpp"
#include "cpesleuth/model.hpp"

namespace cpesleuth {

/// Orders version strings segment by segment. Versions split into maximal
/// runs of digits or letters; any other character separates. Digit runs
/// compare numerically (leading zeros ignored), letter runs lexicographically,
/// and a digit run sorts before a letter run at the same position. When one
/// version is a prefix of the other, the shorter one is less.
///
/// "5.4.5.0124" and "5.4.5.124" are equivalent, hence weak ordering.
std::weak_ordering version_compare(std::string_view a, std::string_view b);

/// True iff `criterion` is vulnerable and its pattern (with version bounds
/// when the pattern version is ANY) covers `cpe`.
bool criterion_applies(const CpeCriterion& criterion, const CpeName& cpe);

struct CveSummary {
  std::string cve_id;
  Severity severity = Severity::Unknown;
  std::optional<double> cvss_score;
  std::string description;

  bool operator==(const CveSummary&) const = default;
};

/// CVEs with at least one applicable criterion, by descending CVSS score
/// (records without a score last), then by id. Throws on a malformed string.
std::vector<CveSummary> cves_for_cpe(std::string_view cpe_string, const Catalog& catalog);

struct VulnerabilityFinding {
  SoftwareRecord software;
  std::string cpe_string;
  std::vector<CveSummary> cves;

  bool operator==(const VulnerabilityFinding&) const = default;
};

/// One finding per matched result with at least one applicable CVE, in input
/// order.
std::vector<VulnerabilityFinding> build_findings(std::span<const MatchResult> results,
                                                 const Catalog& catalog);

}  // namespace cpesleuth
