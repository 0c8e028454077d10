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

#include "cpesleuth/cpe.hpp"

#include <array>

#include "text.hpp"

namespace cpesleuth {
namespace {

constexpr std::string_view kPrefix = "cpe:2.3:";
constexpr std::size_t kComponents = 11;

char lower(char c) noexcept {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_printable_ascii(char c) noexcept { return c > 0x20 && c < 0x7f; }

// Splits on colons that are not escaped; escapes are kept verbatim.
std::vector<std::string_view> split_components(std::string_view body) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '\\') {
      ++i;  // skip the escaped character, validated later
      continue;
    }
    if (body[i] == ':') {
      parts.push_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(body.substr(start));
  return parts;
}

CpeValue parse_component(std::string_view raw, std::size_t index, std::string_view whole) {
  if (raw == "*") return CpeValue::any();
  if (raw == "-") return CpeValue::na();
  if (raw.empty()) {
    throw Error(ErrorCode::BadComponentCount,
                "empty component " + std::to_string(index) + " in '" + std::string(whole) + "'");
  }
  std::string value;
  value.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c == '\\') {
      if (i + 1 >= raw.size()) {
        throw Error(ErrorCode::BadEscape, "trailing escape in '" + std::string(whole) + "'");
      }
      const char escaped = raw[i + 1];
      const char lowered = lower(escaped);
      if (escaped < 0x20 || escaped >= 0x7f || text::is_alnum_lower(lowered)) {
        throw Error(ErrorCode::BadEscape, std::string("invalid escape '\\") + escaped + "' in '" +
                                              std::string(whole) + "'");
      }
      value += escaped;
      ++i;
      continue;
    }
    if (!is_printable_ascii(c)) {
      throw Error(ErrorCode::BadEscape, "unescaped non-printable character in '" +
                                            std::string(whole) + "'");
    }
    value += lower(c);
  }
  return CpeValue::literal(std::move(value));
}

void append_component(const CpeValue& v, std::string& out) {
  if (v.is_any()) {
    out += '*';
    return;
  }
  if (v.is_na()) {
    out += '-';
    return;
  }
  const auto& value = v.value();
  if (value == "-") {
    out += "\\-";
    return;
  }
  for (const char raw : value) {
    const char c = lower(raw);
    if (text::is_alnum_lower(c) || c == '_' || c == '.' || c == '-') {
      out += c;
    } else {
      out += '\\';
      out += c;
    }
  }
}

}  // namespace

CpeName parse_cpe23(std::string_view s) {
  if (s.size() < kPrefix.size() || text::to_lower_ascii(s.substr(0, kPrefix.size())) != kPrefix) {
    throw Error(ErrorCode::BadPrefix, "not a CPE 2.3 formatted string: '" + std::string(s) + "'");
  }
  const auto parts = split_components(s.substr(kPrefix.size()));
  if (parts.size() != kComponents) {
    throw Error(ErrorCode::BadComponentCount, "expected 11 components, found " +
                                                  std::to_string(parts.size()) + " in '" +
                                                  std::string(s) + "'");
  }
  CpeName name;
  const auto part = parts[0];
  if (part.size() != 1 || (lower(part[0]) != 'a' && lower(part[0]) != 'h' && lower(part[0]) != 'o')) {
    throw Error(ErrorCode::BadPart, "part must be a, h or o in '" + std::string(s) + "'");
  }
  name.part = static_cast<CpePart>(lower(part[0]));
  std::array<CpeValue*, kComponents - 1> fields{
      &name.vendor,     &name.product,   &name.version,   &name.update,    &name.edition,
      &name.language,   &name.sw_edition, &name.target_sw, &name.target_hw, &name.other};
  for (std::size_t i = 0; i < fields.size(); ++i) {
    *fields[i] = parse_component(parts[i + 1], i + 1, s);
  }
  return name;
}

std::string format_cpe23(const CpeName& name) {
  std::string out(kPrefix);
  out += static_cast<char>(name.part);
  for (const CpeValue* v : {&name.vendor, &name.product, &name.version, &name.update,
                            &name.edition, &name.language, &name.sw_edition, &name.target_sw,
                            &name.target_hw, &name.other}) {
    out += ':';
    append_component(*v, out);
  }
  return out;
}

bool is_valid_cpe23(std::string_view s) noexcept {
  try {
    parse_cpe23(s);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string CpeEntry::cpe23() const { return format_cpe23(name); }

}  // namespace cpesleuth
