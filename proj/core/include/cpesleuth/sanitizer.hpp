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
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cpesleuth/model.hpp"

namespace cpesleuth {

/// Token lists driving name/vendor normalization.
///
/// The rules file is plain text with one token per line under a section
/// header; '#' starts a comment. Sections that are absent keep their
/// defaults:
///
///     [corporate_stopwords]
///     inc
///     llc
///     [arch_tokens]
///     x64
///     [channel_tokens]
///     beta
///     [locale_pattern]
///     (en|de|fr)([-_][a-z]{2})?
class SanitizerRules {
 public:
  SanitizerRules(std::vector<std::string> corporate_stopwords, std::vector<std::string> arch_tokens,
                 std::vector<std::string> channel_tokens, std::string locale_pattern);

  static SanitizerRules defaults();
  static SanitizerRules parse(std::string_view text);
  static SanitizerRules load(const std::filesystem::path& path);

  const std::vector<std::string>& corporate_stopwords() const noexcept { return stopwords_; }
  const std::vector<std::string>& arch_tokens() const noexcept { return arch_; }
  const std::vector<std::string>& channel_tokens() const noexcept { return channel_; }
  const std::string& locale_pattern() const noexcept { return locale_pattern_; }

  bool is_stopword(std::string_view token) const;
  bool is_arch_token(std::string_view token) const;
  /// Channel token with optional trailing digits ("beta", "rc2").
  bool is_channel_token(std::string_view token) const;
  bool is_locale_token(std::string_view token) const;

 private:
  struct Compiled;

  std::vector<std::string> stopwords_;
  std::vector<std::string> arch_;
  std::vector<std::string> channel_;
  std::string locale_pattern_;
  std::shared_ptr<const Compiled> compiled_;
};

/// Canonical software name. Throws EmptyAfterSanitize when nothing survives.
std::string sanitize_name(std::string_view raw, const SanitizerRules& rules);
/// Canonical vendor; empty input (or a vendor made only of stopwords) yields "".
std::string sanitize_vendor(std::string_view raw, const SanitizerRules& rules);
/// Core version string: no whitespace, no bracketed content, no platform or
/// build suffixes.
std::string sanitize_version(std::string_view raw);
SanitizedSoftware sanitize_record(const SoftwareRecord& record, const SanitizerRules& rules);

/// Vendor as it appears in a CPE vendor attribute (spaces become underscores).
std::string vendor_key(std::string_view sanitized_vendor);

}  // namespace cpesleuth
