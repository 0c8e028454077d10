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

// Deliberately naive reference implementations. They share no code with the
// library beyond the plain data types, so a bug has to be made twice to slip
// through.

#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpesleuth/catalog.hpp"
#include "cpesleuth/model.hpp"

namespace oracle {

// Textbook O(n*m) dynamic program.
inline std::size_t lcs(std::string_view a, std::string_view b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t[a.size()][b.size()];
}

inline cpesleuth::Rational similarity(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return cpesleuth::Rational{100};
  return cpesleuth::Rational(static_cast<std::int64_t>(200 * lcs(a, b)),
                             static_cast<std::int64_t>(a.size() + b.size()));
}

struct Component {
  enum Kind { Any, Na, Literal } kind = Any;
  std::string value;
  bool operator==(const Component&) const = default;
};

// Character-by-character unbinding of a formatted string: 11 components after
// "cpe:2.3:", or nullopt on any malformation.
inline std::optional<std::vector<Component>> unbind(std::string_view s) {
  const std::string prefix = "cpe:2.3:";
  if (s.size() < prefix.size()) return std::nullopt;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return std::nullopt;
  }
  std::vector<std::string> raw(1);
  std::vector<bool> had_escape(1, false);
  for (std::size_t i = prefix.size(); i < s.size(); ++i) {
    const char c = s[i];
    if (c == '\\') {
      if (i + 1 == s.size()) return std::nullopt;
      const char n = s[++i];
      if (std::isalnum(static_cast<unsigned char>(n)) || n < 0x20 || n > 0x7e) return std::nullopt;
      raw.back() += n;
      had_escape.back() = true;
    } else if (c == ':') {
      raw.emplace_back();
      had_escape.push_back(false);
    } else {
      raw.back() += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (raw.size() != 11) return std::nullopt;
  std::vector<Component> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!had_escape[i] && raw[i] == "*") {
      out.push_back({Component::Any, ""});
    } else if (!had_escape[i] && raw[i] == "-") {
      out.push_back({Component::Na, ""});
    } else if (raw[i].empty()) {
      return std::nullopt;
    } else {
      out.push_back({Component::Literal, raw[i]});
    }
  }
  if (out[0].kind != Component::Literal ||
      (out[0].value != "a" && out[0].value != "h" && out[0].value != "o")) {
    return std::nullopt;
  }
  return out;
}

inline Component component(const cpesleuth::CpeValue& v) {
  if (v.is_any()) return {Component::Any, ""};
  if (v.is_na()) return {Component::Na, ""};
  return {Component::Literal, v.value()};
}

inline std::vector<Component> components(const cpesleuth::CpeName& n) {
  return {Component{Component::Literal, std::string(1, static_cast<char>(n.part))},
          component(n.vendor), component(n.product), component(n.version), component(n.update),
          component(n.edition), component(n.language), component(n.sw_edition),
          component(n.target_sw), component(n.target_hw), component(n.other)};
}

// Linear restatement of the four retrieval predicates.
inline bool tier(const cpesleuth::CpeEntry& e, const cpesleuth::SanitizedSoftware& s, int w) {
  if (s.name.empty() || s.version.empty()) return false;
  if (!e.name.version.is_literal() || e.name.version.value() != s.version) return false;
  std::string key = s.vendor;
  std::replace(key.begin(), key.end(), ' ', '_');
  const bool vendor = !key.empty() && e.name.vendor.is_literal() && e.name.vendor.value() == key;
  const std::string& t = e.title_norm;
  const std::string& p = e.product_norm;
  auto prefix = [](const std::string& whole, const std::string& part) {
    return whole.size() >= part.size() && whole.compare(0, part.size(), part) == 0;
  };
  if (w == 1) return vendor && t == s.name;
  if (w == 2) return vendor && p == s.name;
  if (w == 3) {
    return (!t.empty() && (prefix(t, s.name) || prefix(s.name, t))) || (!p.empty() && prefix(p, s.name));
  }
  if (w == 4) return t == s.name;
  return false;
}

// (cpe string, weight) pairs ordered by weight then string.
inline std::vector<std::pair<std::string, int>> union_scan(const std::vector<cpesleuth::CpeEntry>& entries,
                                                           const cpesleuth::SanitizedSoftware& s,
                                                           bool include_deprecated) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& e : entries) {
    if (e.deprecated && !include_deprecated) continue;
    for (int w = 1; w <= 4; ++w) {
      if (tier(e, s, w)) {
        out.emplace_back(e.cpe23(), w);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  return out;
}

// Regex tokenizer + explicit comparison; returns -1, 0 or 1.
inline int version_cmp(const std::string& a, const std::string& b) {
  static const std::regex token("[0-9]+|[A-Za-z]+");
  auto split = [](const std::string& v) {
    std::vector<std::string> out;
    for (auto it = std::sregex_iterator(v.begin(), v.end(), token); it != std::sregex_iterator(); ++it) {
      out.push_back(it->str());
    }
    return out;
  };
  const auto ta = split(a);
  const auto tb = split(b);
  for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
    const bool na = std::isdigit(static_cast<unsigned char>(ta[i][0])) != 0;
    const bool nb = std::isdigit(static_cast<unsigned char>(tb[i][0])) != 0;
    if (na != nb) return na ? -1 : 1;
    if (na) {
      auto strip = [](const std::string& x) {
        const auto p = x.find_first_not_of('0');
        return p == std::string::npos ? std::string("0") : x.substr(p);
      };
      const auto x = strip(ta[i]);
      const auto y = strip(tb[i]);
      if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
      if (x != y) return x < y ? -1 : 1;
    } else {
      std::string x = ta[i];
      std::string y = tb[i];
      for (auto& c : x) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      for (auto& c : y) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (x != y) return x < y ? -1 : 1;
    }
  }
  if (ta.size() == tb.size()) return 0;
  return ta.size() < tb.size() ? -1 : 1;
}

inline bool applies(const cpesleuth::CpeCriterion& c, const cpesleuth::CpeName& n) {
  if (!c.vulnerable) return false;
  const auto pc = components(c.pattern);
  const auto nc = components(n);
  for (std::size_t i = 0; i < pc.size(); ++i) {
    if (i == 3) continue;  // version handled below
    if (pc[i].kind != Component::Any && !(pc[i] == nc[i])) return false;
  }
  if (pc[3].kind != Component::Any) return pc[3] == nc[3];
  if (!c.version_start && !c.version_end) return true;
  if (nc[3].kind != Component::Literal) return false;
  if (c.version_start) {
    const int r = version_cmp(nc[3].value, c.version_start->value);
    if (r < 0 || (r == 0 && !c.version_start->inclusive)) return false;
  }
  if (c.version_end) {
    const int r = version_cmp(nc[3].value, c.version_end->value);
    if (r > 0 || (r == 0 && !c.version_end->inclusive)) return false;
  }
  return true;
}

// Every criterion of every CVE, no index.
inline std::vector<std::string> cve_scan(const cpesleuth::Catalog& catalog, const cpesleuth::CpeName& n) {
  std::vector<const cpesleuth::CveRecord*> hits;
  for (const auto& r : catalog.cve_records()) {
    for (const auto& c : r.criteria) {
      if (applies(c, n)) {
        hits.push_back(&r);
        break;
      }
    }
  }
  std::sort(hits.begin(), hits.end(), [](const auto* a, const auto* b) {
    const double sa = a->cvss_score.value_or(-1.0);
    const double sb = b->cvss_score.value_or(-1.0);
    if (sa != sb) return sa > sb;
    return a->cve_id < b->cve_id;
  });
  std::vector<std::string> ids;
  for (const auto* r : hits) ids.push_back(r->cve_id);
  return ids;
}

}  // namespace oracle
