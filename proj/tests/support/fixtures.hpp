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
#include <string>

#include "cpesleuth/catalog.hpp"
#include "cpesleuth/ingest.hpp"

namespace fixtures {

inline std::filesystem::path dir(const std::string& name) {
  return std::filesystem::path(CPESLEUTH_FIXTURE_DIR) / name;
}

// Dictionary, CVEs and inventory of one frozen table fixture.
inline cpesleuth::Catalog load_table(const std::string& name) {
  using namespace cpesleuth;
  const auto d = dir(name);
  Catalog catalog;
  load_cpe_dictionary({SourceKind::CpeDictionary, SourceFormat::Jsonl, d / "cpe.jsonl"}, catalog);
  load_cves({SourceKind::CveFeed, SourceFormat::Jsonl, d / "cves.jsonl"}, catalog);
  catalog.set_inventory(
      load_inventory({SourceKind::Inventory, SourceFormat::OsqueryJson, d / "inventory.json"}).records);
  return catalog;
}

}  // namespace fixtures
