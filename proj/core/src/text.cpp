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

#include "text.hpp"

#include <cstdint>

namespace cpesleuth::text {

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string to_upper_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const auto start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out += sep;
    out += parts[i];
  }
  return out;
}

namespace {

using namespace std::string_view_literals;

// U+00C0..U+00FF, '\0' = drop, '#' = multi-character (handled separately).
constexpr std::string_view kLatin1 =
    "aaaaaa#ceeeeiiii"   // C0-CF
    "dnooooo\0ouuuuy##"  // D0-DF
    "aaaaaa#ceeeeiiii"   // E0-EF
    "dnooooo\0ouuuuy#y"sv;  // F0-FF

// U+0100..U+017F, '#' = multi-character.
constexpr std::string_view kLatinExtA =
    "aaaaaacccccccc"
    "ddddeeeeeeeeeegggggggghhhhiiiiiiiiii##jjkkkllllllllll"
    "nnnnnnnnnoooooo##rrrrrrssssssssttttttuuuuuuuuuuuuwwyyyzzzzzzs"sv;

static_assert(kLatin1.size() == 64);
static_assert(kLatinExtA.size() == 128);

void append_folded(std::uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    auto c = static_cast<char>(cp);
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out += c;
    return;
  }
  if (cp >= 0xC0 && cp <= 0xFF) {
    const char c = kLatin1[cp - 0xC0];
    if (c == '#') {
      switch (cp) {
        case 0xC6: case 0xE6: out += "ae"; break;
        case 0xDE: case 0xFE: out += "th"; break;
        case 0xDF: out += "ss"; break;
        default: break;
      }
    } else if (c != '\0') {
      out += c;
    }
    return;
  }
  if (cp >= 0x100 && cp <= 0x17F) {
    const char c = kLatinExtA[cp - 0x100];
    if (c == '#') {
      out += (cp == 0x132 || cp == 0x133) ? "ij" : "oe";
    } else {
      out += c;
    }
    return;
  }
  if (cp >= 0xFF01 && cp <= 0xFF5E) {  // fullwidth ASCII
    append_folded(cp - 0xFEE0, out);
    return;
  }
  switch (cp) {
    case 0x00A0: case 0x1680: case 0x202F: case 0x205F: case 0x3000:
      out += ' ';
      return;
    case 0x00AA: out += 'a'; return;
    case 0x00BA: out += 'o'; return;
    case 0x00B2: out += '2'; return;
    case 0x00B3: out += '3'; return;
    case 0x00B9: out += '1'; return;
    case 0x2018: case 0x2019: out += '\''; return;
    case 0x201C: case 0x201D: out += '"'; return;
    case 0x2212: out += '-'; return;
    case 0xFB00: out += "ff"; return;
    case 0xFB01: out += "fi"; return;
    case 0xFB02: out += "fl"; return;
    case 0xFB03: out += "ffi"; return;
    case 0xFB04: out += "ffl"; return;
    case 0xFB05: case 0xFB06: out += "st"; return;
    default: break;
  }
  if (cp >= 0x2000 && cp <= 0x200A) {
    out += ' ';
  } else if (cp >= 0x2010 && cp <= 0x2015) {
    out += '-';
  }
  // everything else has no ASCII equivalent and is dropped
}

}  // namespace

std::string fold_ascii_lower(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  const auto n = utf8.size();
  auto cont = [&](std::size_t k) {
    return k < n && (static_cast<unsigned char>(utf8[k]) & 0xC0) == 0x80;
  };
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(utf8[i]);
    std::uint32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0 && b0 >= 0xC2 && cont(i + 1)) {
      cp = ((b0 & 0x1Fu) << 6) | (static_cast<unsigned char>(utf8[i + 1]) & 0x3Fu);
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2)) {
      cp = ((b0 & 0x0Fu) << 12) | ((static_cast<unsigned char>(utf8[i + 1]) & 0x3Fu) << 6) |
           (static_cast<unsigned char>(utf8[i + 2]) & 0x3Fu);
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
      cp = ((b0 & 0x07u) << 18) | ((static_cast<unsigned char>(utf8[i + 1]) & 0x3Fu) << 12) |
           ((static_cast<unsigned char>(utf8[i + 2]) & 0x3Fu) << 6) |
           (static_cast<unsigned char>(utf8[i + 3]) & 0x3Fu);
      len = 4;
    } else {
      ++i;  // malformed byte
      continue;
    }
    append_folded(cp, out);
    i += len;
  }
  return out;
}

std::string strip_bracketed(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::string stack;
  for (const char c : s) {
    if (c == '(' || c == '[' || c == '{') {
      stack.push_back(c == '(' ? ')' : c == '[' ? ']' : '}');
      continue;
    }
    if (!stack.empty()) {
      if (c == stack.back()) stack.pop_back();
      continue;
    }
    out += c;
  }
  return out;
}

bool all_digits(std::string_view s) noexcept {
  if (s.empty()) return false;
  for (const char c : s) {
    if (!is_digit(c)) return false;
  }
  return true;
}

bool is_dotted_numeric(std::string_view s) noexcept {
  std::size_t groups = 0;
  std::size_t start = 0;
  while (true) {
    const auto dot = s.find('.', start);
    const auto part = s.substr(start, dot == std::string_view::npos ? s.npos : dot - start);
    if (!all_digits(part)) return false;
    ++groups;
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return groups >= 2;
}

}  // namespace cpesleuth::text
