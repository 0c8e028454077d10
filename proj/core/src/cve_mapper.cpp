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

#include "cpesleuth/cve_mapper.hpp"

#include <algorithm>

#include "cpesleuth/cpe.hpp"

namespace cpesleuth {
namespace {

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }
bool is_alpha(char c) noexcept { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

struct Segment {
  std::string_view run;
  bool numeric;
};

// Returns the next digit/letter run at or after `pos`, advancing `pos`.
std::optional<Segment> next_segment(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && !is_digit(s[pos]) && !is_alpha(s[pos])) ++pos;
  if (pos >= s.size()) return std::nullopt;
  const auto start = pos;
  const bool numeric = is_digit(s[pos]);
  while (pos < s.size() && (numeric ? is_digit(s[pos]) : is_alpha(s[pos]))) ++pos;
  return Segment{s.substr(start, pos - start), numeric};
}

std::weak_ordering compare_numeric(std::string_view a, std::string_view b) {
  while (a.size() > 1 && a.front() == '0') a.remove_prefix(1);
  while (b.size() > 1 && b.front() == '0') b.remove_prefix(1);
  if (a.size() != b.size()) return a.size() <=> b.size();
  return a.compare(b) <=> 0;
}

std::weak_ordering compare_alpha(std::string_view a, std::string_view b) {
  const auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto ca = a[i] | 0x20;  // ASCII letters only, case-insensitive
    auto cb = b[i] | 0x20;
    if (ca != cb) return ca <=> cb;
  }
  return a.size() <=> b.size();
}

bool value_covers(const CpeValue& pattern, const CpeValue& value) {
  return pattern.is_any() || pattern == value;
}

bool within_bounds(const CpeCriterion& c, const CpeValue& version) {
  if (!c.version_start && !c.version_end) return true;
  if (!version.is_literal()) return false;
  const auto& v = version.value();
  if (c.version_start) {
    const auto cmp = version_compare(v, c.version_start->value);
    if (cmp < 0 || (cmp == 0 && !c.version_start->inclusive)) return false;
  }
  if (c.version_end) {
    const auto cmp = version_compare(v, c.version_end->value);
    if (cmp > 0 || (cmp == 0 && !c.version_end->inclusive)) return false;
  }
  return true;
}

}  // namespace

std::weak_ordering version_compare(std::string_view a, std::string_view b) {
  std::size_t pa = 0;
  std::size_t pb = 0;
  while (true) {
    const auto sa = next_segment(a, pa);
    const auto sb = next_segment(b, pb);
    if (!sa && !sb) return std::weak_ordering::equivalent;
    if (!sa) return std::weak_ordering::less;
    if (!sb) return std::weak_ordering::greater;
    if (sa->numeric != sb->numeric) {
      return sa->numeric ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    const auto cmp = sa->numeric ? compare_numeric(sa->run, sb->run) : compare_alpha(sa->run, sb->run);
    if (cmp != 0) return cmp;
  }
}

bool criterion_applies(const CpeCriterion& c, const CpeName& cpe) {
  if (!c.vulnerable) return false;
  const auto& p = c.pattern;
  if (p.part != cpe.part || !value_covers(p.vendor, cpe.vendor) ||
      !value_covers(p.product, cpe.product)) {
    return false;
  }
  if (p.version.is_any()) {
    if (!within_bounds(c, cpe.version)) return false;
  } else if (!(p.version == cpe.version)) {
    return false;
  }
  return value_covers(p.update, cpe.update) && value_covers(p.edition, cpe.edition) &&
         value_covers(p.language, cpe.language) && value_covers(p.sw_edition, cpe.sw_edition) &&
         value_covers(p.target_sw, cpe.target_sw) && value_covers(p.target_hw, cpe.target_hw) &&
         value_covers(p.other, cpe.other);
}

std::vector<CveSummary> cves_for_cpe(std::string_view cpe_string, const Catalog& catalog) {
  CpeName cpe;
  try {
    cpe = parse_cpe23(cpe_string);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what(), e.code());
  }
  const auto vendor = cpe.vendor.is_literal() ? std::string_view(cpe.vendor.value()) : "*";
  const auto product = cpe.product.is_literal() ? std::string_view(cpe.product.value()) : "*";

  std::vector<CveSummary> out;
  for (const CveRecord* record : catalog.cves_for_product(vendor, product)) {
    const bool applies = std::any_of(record->criteria.begin(), record->criteria.end(),
                                     [&](const CpeCriterion& c) { return criterion_applies(c, cpe); });
    if (applies) {
      out.push_back({record->cve_id, record->severity, record->cvss_score, record->description});
    }
  }
  std::sort(out.begin(), out.end(), [](const CveSummary& a, const CveSummary& b) {
    if (a.cvss_score.has_value() != b.cvss_score.has_value()) return a.cvss_score.has_value();
    if (a.cvss_score && *a.cvss_score != *b.cvss_score) return *a.cvss_score > *b.cvss_score;
    return a.cve_id < b.cve_id;
  });
  return out;
}

std::vector<VulnerabilityFinding> build_findings(std::span<const MatchResult> results,
                                                 const Catalog& catalog) {
  std::vector<VulnerabilityFinding> out;
  for (const auto& result : results) {
    if (!result.matched) continue;
    auto cves = cves_for_cpe(result.matched->cpe_string, catalog);
    if (cves.empty()) continue;
    out.push_back({result.software, result.matched->cpe_string, std::move(cves)});
  }
  return out;
}

}  // namespace cpesleuth
