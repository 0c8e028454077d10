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

#include "cpesleuth/model.hpp"

namespace cpesleuth {

/// Parses a CPE 2.3 formatted string ("cpe:2.3:part:vendor:...").
///
/// "*" binds to ANY and "-" to NA. Backslash escapes are resolved into
/// literal characters and all values are lowercased. Legacy URI bindings
/// ("cpe:/a:...") are rejected with BadPrefix.
///
/// Throws Error with BadPrefix, BadComponentCount, BadPart or BadEscape.
CpeName parse_cpe23(std::string_view s);

/// Canonical lowercase binding. Every literal character other than
/// [a-z0-9._-] is backslash-escaped, as is a literal consisting of a single
/// "-" (which would otherwise read back as NA).
std::string format_cpe23(const CpeName& name);

bool is_valid_cpe23(std::string_view s) noexcept;

}  // namespace cpesleuth
