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

#include <random>
#include <string>

#include "cpesleuth/matcher.hpp"

namespace {

std::string random_text(std::mt19937_64& rng, std::size_t len) {
  static constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz ";
  std::string s(len, ' ');
  for (auto& c : s) c = kAlphabet[rng() % kAlphabet.size()];
  return s;
}

void BM_LcsLength(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto len = static_cast<std::size_t>(state.range(0));
  const auto a = random_text(rng, len);
  const auto b = random_text(rng, len);
  for (auto _ : state) benchmark::DoNotOptimize(cpesleuth::lcs_length(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LcsLength)->RangeMultiplier(4)->Range(8, 2048)->Complexity();

void BM_SimilarityTypicalName(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(cpesleuth::similarity("microsoft visual c++ 2015 redistributable",
                                                   "microsoft visual c++ 2015 redistributable package"));
  }
}
BENCHMARK(BM_SimilarityTypicalName);

}  // namespace
