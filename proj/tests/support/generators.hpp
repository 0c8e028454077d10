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

#include <algorithm>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cpesleuth/cpe.hpp"
#include "cpesleuth/ingest.hpp"
#include "cpesleuth/model.hpp"

// Random inputs shared by the property tests and the acceptance checks.
namespace gen {

using namespace cpesleuth;

inline std::string random_string(std::mt19937_64& rng, std::size_t max_len, std::string_view alphabet) {
  std::string s(std::uniform_int_distribution<std::size_t>(0, max_len)(rng), ' ');
  for (auto& c : s) c = alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
  return s;
}

// Random values drawn from the unreserved alphabet plus characters that must
// be escaped; a lone "-" or "*" literal is included deliberately.
inline CpeValue random_value(std::mt19937_64& rng) {
  static constexpr std::string_view kPlain = "abcdefghijklmnopqrstuvwxyz0123456789._-";
  static constexpr std::string_view kSpecial = R"(:*?!"#$%&'()+,/;<=>@[\]^`{|}~ )";
  std::uniform_int_distribution<int> kind(0, 9);
  const int k = kind(rng);
  if (k == 0) return CpeValue::any();
  if (k == 1) return CpeValue::na();
  if (k == 2) return CpeValue::literal(std::uniform_int_distribution<int>(0, 1)(rng) ? "-" : "*");
  std::uniform_int_distribution<std::size_t> len(1, 10);
  std::uniform_int_distribution<int> special(0, 4);
  std::string v;
  for (std::size_t n = len(rng); v.size() < n;) {
    if (special(rng) == 0) {
      v += kSpecial[std::uniform_int_distribution<std::size_t>(0, kSpecial.size() - 1)(rng)];
    } else {
      v += kPlain[std::uniform_int_distribution<std::size_t>(0, kPlain.size() - 1)(rng)];
    }
  }
  return CpeValue::literal(v);
}

inline CpeName random_name(std::mt19937_64& rng) {
  CpeName n;
  static constexpr CpePart kParts[] = {CpePart::Application, CpePart::Hardware, CpePart::OperatingSystem};
  n.part = kParts[std::uniform_int_distribution<int>(0, 2)(rng)];
  for (CpeValue* v : {&n.vendor, &n.product, &n.version, &n.update, &n.edition, &n.language,
                      &n.sw_edition, &n.target_sw, &n.target_hw, &n.other}) {
    *v = random_value(rng);
  }
  return n;
}

// Small random catalogs over a tiny vocabulary so that every tier fires.
struct RandomCatalog {
  std::vector<CpeEntry> entries;
  std::vector<SanitizedSoftware> queries;
};

inline RandomCatalog random_catalog(std::mt19937_64& rng, std::size_t max_entries, std::size_t queries) {
  static const std::vector<std::string> kWords{"acme", "tool", "suite", "pro", "vlc", "media", "player", "x"};
  static const std::vector<std::string> kVendors{"acme", "videolan", "the_doc", "x"};
  static const std::vector<std::string> kVersions{"1.0", "1.0.3", "2", "5.20"};
  auto pick = [&](const std::vector<std::string>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  auto phrase = [&](std::size_t max_words) {
    std::string s = pick(kWords);
    for (auto n = std::uniform_int_distribution<std::size_t>(0, max_words - 1)(rng); n > 0; --n) {
      s += ' ' + pick(kWords);
    }
    return s;
  };
  RandomCatalog out;
  const auto n = std::uniform_int_distribution<std::size_t>(0, max_entries)(rng);
  for (std::size_t i = 0; i < n; ++i) {
    auto product = phrase(2);
    std::replace(product.begin(), product.end(), ' ', '_');
    const auto version = pick(kVersions);
    const auto title = rng() % 5 == 0 ? std::string() : phrase(3) + " " + version;
    CpeName name = parse_cpe23("cpe:2.3:a:" + pick(kVendors) + ":" + product + ":" + version +
                               ":*:*:*:*:*:*:*");
    if (rng() % 3 == 0) name.update = CpeValue::literal("u" + std::to_string(i));  // distinct identity
    out.entries.push_back(make_cpe_entry(std::move(name), title, rng() % 7 == 0));
  }
  for (std::size_t i = 0; i < queries; ++i) {
    std::string vendor = rng() % 4 == 0 ? "" : pick(kVendors);
    std::replace(vendor.begin(), vendor.end(), '_', ' ');
    out.queries.push_back({phrase(3), vendor, rng() % 10 == 0 ? "" : pick(kVersions), i + 1});
  }
  return out;
}

}  // namespace gen
