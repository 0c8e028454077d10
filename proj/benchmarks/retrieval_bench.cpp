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

#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

#include "cpesleuth/comparison.hpp"
#include "cpesleuth/cpe.hpp"
#include "cpesleuth/ingest.hpp"
#include "cpesleuth/matcher.hpp"

namespace {

using namespace cpesleuth;

// Synthetic dictionary: `products` products with a handful of versions each.
Catalog synthetic_catalog(std::size_t products) {
  std::mt19937_64 rng(42);
  std::vector<CpeEntry> entries;
  for (std::size_t p = 0; p < products; ++p) {
    const auto vendor = "vendor" + std::to_string(p % 97);
    const auto product = "product_" + std::to_string(p);
    for (int v = 0; v < 5; ++v) {
      const auto version = std::to_string(rng() % 10) + "." + std::to_string(v);
      auto name = parse_cpe23("cpe:2.3:a:" + vendor + ":" + product + ":" + version + ":*:*:*:*:*:*:*");
      entries.push_back(make_cpe_entry(std::move(name), vendor + " Product " + std::to_string(p) + " " + version));
    }
  }
  Catalog c;
  c.upsert_cpe_entries(entries);
  return c;
}

void BM_UnionCandidates(benchmark::State& state) {
  const auto catalog = synthetic_catalog(static_cast<std::size_t>(state.range(0)));
  const auto& probe = catalog.cpe_entries()[catalog.cpe_entries().size() / 2];
  const SanitizedSoftware s{probe.title_norm, probe.name.vendor.value(), probe.name.version.value(), 1};
  for (auto _ : state) benchmark::DoNotOptimize(catalog.union_candidates(s));
}
BENCHMARK(BM_UnionCandidates)->Arg(1000)->Arg(20000);

Catalog table(const char* name) {
  const auto d = std::filesystem::path(CPESLEUTH_FIXTURE_DIR) / name;
  Catalog c;
  load_cpe_dictionary({SourceKind::CpeDictionary, SourceFormat::Jsonl, d / "cpe.jsonl"}, c);
  load_cves({SourceKind::CveFeed, SourceFormat::Jsonl, d / "cves.jsonl"}, c);
  c.set_inventory(load_inventory({SourceKind::Inventory, SourceFormat::OsqueryJson, d / "inventory.json"}).records);
  return c;
}

void BM_RunComparisonTenApps(benchmark::State& state) {
  const auto catalog = table("ten_apps");
  const auto rules = SanitizerRules::defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_comparison(catalog.inventory(), catalog, rules, MatchConfig{}));
  }
}
BENCHMARK(BM_RunComparisonTenApps);

void BM_MatchInventoryThreads(benchmark::State& state) {
  const auto catalog = synthetic_catalog(20000);
  std::vector<SoftwareRecord> inventory;
  for (std::size_t i = 0; i < 500; ++i) {
    const auto& e = catalog.cpe_entries()[(i * 37) % catalog.cpe_entries().size()];
    inventory.push_back({e.title, e.name.vendor.value(), e.name.version.value(), std::nullopt, i + 1});
  }
  const auto rules = SanitizerRules::defaults();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        match_inventory(inventory, catalog, rules, MatchConfig{}, static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_MatchInventoryThreads)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace
