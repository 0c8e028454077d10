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

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cpesleuth/catalog.hpp"
#include "cpesleuth/cve_mapper.hpp"
#include "cpesleuth/model.hpp"

namespace cpesleuth {

inline constexpr const char* kCatalogFileName = "catalog.db";
inline constexpr const char* kCatalogEnvVar = "CPESLEUTH_DATA";

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

/// Catalog directory: `flag` if given, else $CPESLEUTH_DATA, else
/// $XDG_DATA_HOME/cpesleuth, else ~/.local/share/cpesleuth. Throws
/// InvalidArgument if none can be determined.
std::filesystem::path resolve_catalog_dir(const std::optional<std::filesystem::path>& flag,
                                          const EnvLookup& env = {});

/// Exclusive writer lock: `<dir>/catalog.lock` holding the owner's pid.
/// A lock left behind by a dead process is taken over.
class CatalogLock {
 public:
  explicit CatalogLock(const std::filesystem::path& dir);
  ~CatalogLock();
  CatalogLock(const CatalogLock&) = delete;
  CatalogLock& operator=(const CatalogLock&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// SQLite-backed persistence for the catalog (tables `cpe`, `nvd_cves`,
/// `programs`, `program_cves`, `sources`, `meta`). In-memory indexes are
/// rebuilt on load; the database only holds rows.
class Store {
 public:
  /// Opens (creating if needed) the database file. Throws Storage on failure
  /// or on a schema version mismatch.
  explicit Store(const std::filesystem::path& db_path);
  ~Store();
  Store(Store&&) noexcept;
  Store& operator=(Store&&) noexcept;

  Catalog load_catalog() const;
  /// Replaces all catalog rows (entries, CVEs, inventory, sources) in one
  /// transaction.
  void save_catalog(const Catalog& catalog);

  /// Replaces the stored match results (the `programs` table) and clears
  /// previous findings. Traces are not persisted.
  void save_results(std::span<const MatchResult> results);
  std::vector<MatchResult> load_results() const;

  void save_findings(std::span<const VulnerabilityFinding> findings);
  /// CVE summaries are read back from `catalog`; ids no longer in the catalog
  /// are skipped.
  std::vector<VulnerabilityFinding> load_findings(const Catalog& catalog) const;

  /// VACUUM.
  void compact();
  /// Re-derives title_norm/product_norm from the stored rows and REINDEXes.
  void rebuild_index();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace cpesleuth
