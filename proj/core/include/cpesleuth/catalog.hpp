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

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cpesleuth/model.hpp"

namespace cpesleuth {

inline constexpr int kSchemaVersion = 1;

struct SourceRecord {
  std::string kind;
  std::string format;
  std::string uri_or_path;
  std::int64_t fetched_at = 0;  // unix seconds

  bool operator==(const SourceRecord&) const = default;
};

struct CatalogMeta {
  int schema_version = kSchemaVersion;
  std::vector<SourceRecord> sources;
};

/// CPE dictionary, CVE records and the current inventory snapshot, with the
/// lookup indexes used by the retrieval tiers.
///
/// A Catalog is mutated only while ingesting; afterwards every const member
/// is safe to call from any number of threads. Mutation invalidates
/// references previously handed out (candidates, CVE pointers).
class Catalog {
 public:
  Catalog() = default;

  /// Inserts entries not yet present (identity = full attribute tuple). An
  /// existing entry takes the newer title and deprecation flag. Returns the
  /// number of new entries.
  std::size_t upsert_cpe_entries(std::span<const CpeEntry> entries);
  /// Inserts or replaces by cve_id. Returns the number of new records.
  std::size_t upsert_cves(std::span<const CveRecord> records);
  void set_inventory(std::vector<SoftwareRecord> records);

  const std::vector<CpeEntry>& cpe_entries() const noexcept { return entries_; }
  const std::vector<CveRecord>& cve_records() const noexcept { return cves_; }
  const std::vector<SoftwareRecord>& inventory() const noexcept { return inventory_; }
  const CpeEntry* find_cpe(std::string_view cpe_string) const;
  const CveRecord* find_cve(std::string_view cve_id) const;

  CatalogMeta& meta() noexcept { return meta_; }
  const CatalogMeta& meta() const noexcept { return meta_; }

  /// Entries satisfying one tier predicate, in catalog order. Deprecated
  /// entries are included; filtering happens in union_candidates.
  std::vector<std::reference_wrapper<const CpeEntry>> tier_candidates(
      const SanitizedSoftware& software, TierWeight tier) const;

  /// Union of tiers 1..4, each entry tagged with the lowest tier it matched,
  /// ordered by (weight, cpe string).
  std::vector<MatchCandidate> union_candidates(const SanitizedSoftware& software,
                                               bool include_deprecated = false) const;

  /// Entries whose title_norm equals `key`.
  std::vector<std::reference_wrapper<const CpeEntry>> by_title(std::string_view key) const;
  /// Entries whose product_norm equals `key`.
  std::vector<std::reference_wrapper<const CpeEntry>> by_product(std::string_view key) const;

  /// CVE records having a criterion that could apply to (vendor, product);
  /// criteria with ANY vendor/product are included.
  std::vector<const CveRecord*> cves_for_product(std::string_view vendor,
                                                 std::string_view product) const;

  /// Drops and recomputes every index from the stored entries.
  void rebuild_indexes();

 private:
  void index_entry(std::size_t pos);
  void index_cve(std::size_t pos);

  std::vector<CpeEntry> entries_;
  std::vector<std::string> entry_keys_;  // cpe23 per entry, same order
  std::unordered_map<std::string, std::size_t> by_cpe_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_title_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_product_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_product_vendor_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_version_;

  std::vector<CveRecord> cves_;
  std::unordered_map<std::string, std::size_t> cve_by_id_;
  std::unordered_map<std::string, std::vector<std::size_t>> cve_by_product_;

  std::vector<SoftwareRecord> inventory_;
  CatalogMeta meta_;
};

/// The raw tier predicate, shared by the indexed lookup and by anything that
/// needs to evaluate a single entry.
bool tier_predicate(const CpeEntry& entry, const SanitizedSoftware& software, TierWeight tier);

}  // namespace cpesleuth
