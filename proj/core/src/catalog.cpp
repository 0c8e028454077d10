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

#include "cpesleuth/catalog.hpp"

#include <algorithm>
#include <set>

#include "cpesleuth/cpe.hpp"
#include "cpesleuth/sanitizer.hpp"

namespace cpesleuth {
namespace {

constexpr char kKeySep = '\x1f';

std::string pair_key(std::string_view a, std::string_view b) {
  std::string key(a);
  key += kKeySep;
  key += b;
  return key;
}

std::string_view literal_or_star(const CpeValue& v) {
  return v.is_literal() ? std::string_view(v.value()) : std::string_view("*");
}

bool version_equals(const CpeEntry& entry, const SanitizedSoftware& s) {
  return !s.version.empty() && entry.name.version.is_literal() &&
         entry.name.version.value() == s.version;
}

bool vendor_equals(const CpeEntry& entry, const SanitizedSoftware& s) {
  return !s.vendor.empty() && entry.name.vendor.is_literal() &&
         entry.name.vendor.value() == vendor_key(s.vendor);
}

}  // namespace

bool tier_predicate(const CpeEntry& entry, const SanitizedSoftware& s, TierWeight tier) {
  if (s.name.empty() || !version_equals(entry, s)) return false;
  switch (tier.value()) {
    case 1:
      return entry.title_norm == s.name && vendor_equals(entry, s);
    case 2:
      return entry.product_norm == s.name && vendor_equals(entry, s);
    case 3: {
      const auto& title = entry.title_norm;
      const auto& product = entry.product_norm;
      return (!title.empty() && (title.starts_with(s.name) || s.name.starts_with(title))) ||
             (!product.empty() && product.starts_with(s.name));
    }
    case 4:
      return entry.title_norm == s.name;
    default:
      return false;
  }
}

std::size_t Catalog::upsert_cpe_entries(std::span<const CpeEntry> entries) {
  std::size_t added = 0;
  bool replaced = false;
  for (const auto& entry : entries) {
    auto key = entry.cpe23();
    if (const auto it = by_cpe_.find(key); it != by_cpe_.end()) {
      auto& existing = entries_[it->second];
      if (!(existing == entry)) {
        existing = entry;
        replaced = true;
      }
      continue;
    }
    const auto pos = entries_.size();
    entries_.push_back(entry);
    entry_keys_.push_back(key);
    by_cpe_.emplace(std::move(key), pos);
    if (!replaced) index_entry(pos);
    ++added;
  }
  if (replaced) rebuild_indexes();
  return added;
}

std::size_t Catalog::upsert_cves(std::span<const CveRecord> records) {
  std::size_t added = 0;
  bool replaced = false;
  for (const auto& record : records) {
    if (const auto it = cve_by_id_.find(record.cve_id); it != cve_by_id_.end()) {
      cves_[it->second] = record;
      replaced = true;
      continue;
    }
    const auto pos = cves_.size();
    cves_.push_back(record);
    cve_by_id_.emplace(record.cve_id, pos);
    if (!replaced) index_cve(pos);
    ++added;
  }
  if (replaced) rebuild_indexes();
  return added;
}

void Catalog::set_inventory(std::vector<SoftwareRecord> records) {
  validate_snapshot(records);
  inventory_ = std::move(records);
}

const CpeEntry* Catalog::find_cpe(std::string_view cpe_string) const {
  const auto it = by_cpe_.find(std::string(cpe_string));
  return it == by_cpe_.end() ? nullptr : &entries_[it->second];
}

const CveRecord* Catalog::find_cve(std::string_view cve_id) const {
  const auto it = cve_by_id_.find(std::string(cve_id));
  return it == cve_by_id_.end() ? nullptr : &cves_[it->second];
}

void Catalog::index_entry(std::size_t pos) {
  const auto& e = entries_[pos];
  if (!e.title_norm.empty()) by_title_[e.title_norm].push_back(pos);
  if (!e.product_norm.empty()) {
    by_product_[e.product_norm].push_back(pos);
    if (e.name.vendor.is_literal()) {
      by_product_vendor_[pair_key(e.product_norm, e.name.vendor.value())].push_back(pos);
    }
  }
  if (e.name.version.is_literal()) by_version_[e.name.version.value()].push_back(pos);
}

void Catalog::index_cve(std::size_t pos) {
  std::set<std::string> keys;
  for (const auto& c : cves_[pos].criteria) {
    keys.insert(pair_key(literal_or_star(c.pattern.vendor), literal_or_star(c.pattern.product)));
  }
  for (const auto& key : keys) cve_by_product_[key].push_back(pos);
}

void Catalog::rebuild_indexes() {
  by_cpe_.clear();
  by_title_.clear();
  by_product_.clear();
  by_product_vendor_.clear();
  by_version_.clear();
  entry_keys_.clear();
  for (std::size_t pos = 0; pos < entries_.size(); ++pos) {
    auto key = entries_[pos].cpe23();
    entry_keys_.push_back(key);
    by_cpe_.emplace(std::move(key), pos);
    index_entry(pos);
  }
  cve_by_id_.clear();
  cve_by_product_.clear();
  for (std::size_t pos = 0; pos < cves_.size(); ++pos) {
    cve_by_id_.emplace(cves_[pos].cve_id, pos);
    index_cve(pos);
  }
}

std::vector<std::reference_wrapper<const CpeEntry>> Catalog::tier_candidates(
    const SanitizedSoftware& s, TierWeight tier) const {
  std::vector<std::reference_wrapper<const CpeEntry>> out;
  if (s.name.empty() || s.version.empty()) return out;
  if ((tier.value() == 1 || tier.value() == 2) && s.vendor.empty()) return out;

  const std::vector<std::size_t>* positions = nullptr;
  auto lookup = [&](const auto& index, const std::string& key) {
    const auto it = index.find(key);
    positions = it == index.end() ? nullptr : &it->second;
  };
  switch (tier.value()) {
    case 1:
    case 4:
      lookup(by_title_, s.name);
      break;
    case 2:
      lookup(by_product_vendor_, pair_key(s.name, vendor_key(s.vendor)));
      break;
    case 3:
      lookup(by_version_, s.version);
      break;
  }
  if (positions == nullptr) return out;
  for (const auto pos : *positions) {
    if (tier_predicate(entries_[pos], s, tier)) out.emplace_back(entries_[pos]);
  }
  return out;
}

std::vector<MatchCandidate> Catalog::union_candidates(const SanitizedSoftware& s,
                                                      bool include_deprecated) const {
  struct Hit {
    const CpeEntry* entry;
    int weight;
    std::string_view key;
  };
  std::unordered_map<const CpeEntry*, std::size_t> seen;
  std::vector<Hit> hits;
  for (int w = 1; w <= kTierCount; ++w) {
    for (const auto& ref : tier_candidates(s, TierWeight{w})) {
      const CpeEntry* entry = &ref.get();
      if (entry->deprecated && !include_deprecated) continue;
      if (seen.contains(entry)) continue;  // already present at a lower weight
      const auto pos = static_cast<std::size_t>(entry - entries_.data());
      seen.emplace(entry, hits.size());
      hits.push_back({entry, w, entry_keys_[pos]});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.key < b.key;
  });
  std::vector<MatchCandidate> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back(MatchCandidate{std::cref(*h.entry), TierWeight{h.weight}});
  return out;
}

std::vector<std::reference_wrapper<const CpeEntry>> Catalog::by_title(std::string_view key) const {
  std::vector<std::reference_wrapper<const CpeEntry>> out;
  if (const auto it = by_title_.find(std::string(key)); it != by_title_.end()) {
    for (const auto pos : it->second) out.emplace_back(entries_[pos]);
  }
  return out;
}

std::vector<std::reference_wrapper<const CpeEntry>> Catalog::by_product(
    std::string_view key) const {
  std::vector<std::reference_wrapper<const CpeEntry>> out;
  if (const auto it = by_product_.find(std::string(key)); it != by_product_.end()) {
    for (const auto pos : it->second) out.emplace_back(entries_[pos]);
  }
  return out;
}

std::vector<const CveRecord*> Catalog::cves_for_product(std::string_view vendor,
                                                        std::string_view product) const {
  std::set<std::size_t> positions;
  for (const auto& key : {pair_key(vendor, product), pair_key(vendor, "*"), pair_key("*", product),
                          pair_key("*", "*")}) {
    if (const auto it = cve_by_product_.find(key); it != cve_by_product_.end()) {
      positions.insert(it->second.begin(), it->second.end());
    }
  }
  std::vector<const CveRecord*> out;
  out.reserve(positions.size());
  for (const auto pos : positions) out.push_back(&cves_[pos]);
  return out;
}

}  // namespace cpesleuth
