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

#include <chrono>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cpesleuth/catalog.hpp"
#include "cpesleuth/model.hpp"

namespace cpesleuth {

enum class SourceKind { CpeDictionary, CveFeed, Inventory };
enum class SourceFormat { OfficialXml, NvdJson, Jsonl, OsqueryJson };

std::string_view to_string(SourceKind kind) noexcept;
std::string_view to_string(SourceFormat format) noexcept;
/// Accepts "cpe"/"cpe_dictionary", "cve"/"cve_feed", "inventory".
SourceKind parse_source_kind(std::string_view text);
SourceFormat parse_source_format(std::string_view text);

struct SourceDescriptor {
  SourceKind kind;
  SourceFormat format;
  std::filesystem::path path;
  std::chrono::system_clock::time_point fetched_at = std::chrono::system_clock::now();

  /// Throws UnsupportedFormat when `format` is not legal for `kind`.
  void validate() const;
};

/// title_norm: lowercased title with punctuation trimmed from each token and
/// the entry's own version literal removed as a token.
std::string derive_title_norm(std::string_view title, const CpeValue& version);
/// product_norm: product literal with underscores replaced by spaces.
std::string derive_product_norm(const CpeValue& product);
/// Builds a dictionary entry with its derived lookup keys.
CpeEntry make_cpe_entry(CpeName name, std::string title, bool deprecated = false);

/// Streaming readers. Each calls `sink` once per record, in input order, and
/// throws Error(ParseError) with the offending line and the underlying cause.
using CpeSink = std::function<void(CpeEntry)>;
void read_cpe_jsonl(std::istream& in, const CpeSink& sink);
void read_cpe_official_xml(std::istream& in, const CpeSink& sink);

std::vector<CveRecord> read_cves_nvd_json(std::istream& in);
std::vector<CveRecord> read_cves_jsonl(std::istream& in);

struct InventoryLoad {
  std::vector<SoftwareRecord> records;
  std::size_t skipped = 0;  // rows with a missing or blank name
};
InventoryLoad read_inventory_osquery_json(std::istream& in);
InventoryLoad read_inventory_jsonl(std::istream& in);

/// Loads a dictionary source into `catalog`; returns entries read.
std::size_t load_cpe_dictionary(const SourceDescriptor& src, Catalog& catalog);
/// Loads a CVE source into `catalog`; returns records read.
std::size_t load_cves(const SourceDescriptor& src, Catalog& catalog);
/// Reads an inventory snapshot; record ids are assigned 1, 2, 3, ...
InventoryLoad load_inventory(const SourceDescriptor& src);

}  // namespace cpesleuth
