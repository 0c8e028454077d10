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

#include <string>
#include <string_view>
#include <vector>

namespace cpesleuth::text {

std::string_view trim(std::string_view s) noexcept;
std::string to_lower_ascii(std::string_view s);
std::string to_upper_ascii(std::string_view s);

inline bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }
inline bool is_lower_alpha(char c) noexcept { return c >= 'a' && c <= 'z'; }
inline bool is_alnum_lower(char c) noexcept { return is_digit(c) || is_lower_alpha(c); }
inline bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

/// Splits on ASCII whitespace runs; never yields empty tokens.
std::vector<std::string_view> split_ws(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Lowercases and folds UTF-8 input to ASCII: compatibility forms (fullwidth
/// letters, ligatures, exotic spaces) map to their ASCII equivalents, Latin
/// letters lose their diacritics, dashes become '-', and anything without an
/// ASCII equivalent (including trademark/registered/copyright signs and
/// malformed bytes) is dropped.
std::string fold_ascii_lower(std::string_view utf8);

/// Removes (), [] and {} groups including their delimiters, honouring
/// nesting. An unclosed opener removes everything after it.
std::string strip_bracketed(std::string_view s);

/// True for strings of the form digits(.digits)+, e.g. "19.0" or "5.4.5.0124".
bool is_dotted_numeric(std::string_view s) noexcept;

bool all_digits(std::string_view s) noexcept;

}  // namespace cpesleuth::text
