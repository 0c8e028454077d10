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

#include "cpesleuth/sanitizer.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>
#include <unordered_set>

#include "text.hpp"

namespace cpesleuth {

struct SanitizerRules::Compiled {
  std::unordered_set<std::string> stopwords;
  std::unordered_set<std::string> arch;
  std::unordered_set<std::string> channel;
  std::regex locale;
};

namespace {

void require_lowercase_list(const std::vector<std::string>& tokens, std::string_view section) {
  if (tokens.empty()) {
    throw Error(ErrorCode::InvalidArgument, "sanitizer rule list '" + std::string(section) +
                                                "' is empty");
  }
  for (const auto& t : tokens) {
    if (t.empty() || text::to_lower_ascii(t) != t) {
      throw Error(ErrorCode::InvalidArgument, "sanitizer rule token '" + t + "' in '" +
                                                  std::string(section) +
                                                  "' must be non-empty lowercase");
    }
  }
}

// Keeps [a-z0-9.+-], then trims hyphens and dots from both ends.
std::string clean_name_token(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (const char c : token) {
    if (text::is_alnum_lower(c) || c == '.' || c == '+' || c == '-') out += c;
  }
  auto edge = [](char c) { return c == '.' || c == '-'; };
  std::size_t b = 0;
  std::size_t e = out.size();
  while (b < e && edge(out[b])) ++b;
  while (e > b && edge(out[e - 1])) --e;
  return out.substr(b, e - b);
}

std::string strip_app_suffix(std::string token) {
  constexpr std::string_view kApp = ".app";
  while (token.size() > kApp.size() && token.ends_with(kApp)) {
    token = clean_name_token(std::string_view(token).substr(0, token.size() - kApp.size()));
  }
  return token;
}

std::string clean_vendor_token(std::string_view token) {
  std::string out;
  for (const char c : token) {
    if (text::is_alnum_lower(c) || c == '.') out += c;
  }
  std::size_t b = 0;
  std::size_t e = out.size();
  while (b < e && out[b] == '.') ++b;
  while (e > b && out[e - 1] == '.') --e;
  return out.substr(b, e - b);
}

bool is_version_separator(char c) noexcept { return c == '-' || c == '_' || c == '+' || c == ' '; }

}  // namespace

SanitizerRules::SanitizerRules(std::vector<std::string> corporate_stopwords,
                               std::vector<std::string> arch_tokens,
                               std::vector<std::string> channel_tokens, std::string locale_pattern)
    : stopwords_(std::move(corporate_stopwords)),
      arch_(std::move(arch_tokens)),
      channel_(std::move(channel_tokens)),
      locale_pattern_(std::move(locale_pattern)) {
  require_lowercase_list(stopwords_, "corporate_stopwords");
  require_lowercase_list(arch_, "arch_tokens");
  require_lowercase_list(channel_, "channel_tokens");
  if (locale_pattern_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "locale_pattern is empty");
  }
  auto compiled = std::make_shared<Compiled>();
  compiled->stopwords.insert(stopwords_.begin(), stopwords_.end());
  compiled->arch.insert(arch_.begin(), arch_.end());
  compiled->channel.insert(channel_.begin(), channel_.end());
  try {
    compiled->locale = std::regex(locale_pattern_, std::regex::ECMAScript | std::regex::optimize);
  } catch (const std::regex_error& e) {
    throw Error(ErrorCode::InvalidArgument,
                "bad locale_pattern '" + locale_pattern_ + "': " + e.what());
  }
  compiled_ = std::move(compiled);
}

SanitizerRules SanitizerRules::defaults() {
  return SanitizerRules(
      {"technologies", "technology", "inc", "incorporated", "llc", "ltd", "limited", "corp",
       "corporation", "gmbh", "co", "company", "software", "foundation"},
      {"x86", "x64", "32-bit", "64-bit", "32bit", "64bit", "i386", "i686", "amd64", "arm64",
       "win32", "win64"},
      {"beta", "alpha", "rc", "preview", "nightly"},
      "(en|de|fr|es|ja|ko|ru|zh|pt|nl|pl|sv|da|fi|nb|cs|hu|tr|el|he|ar|uk)([-_][a-z]{2})?"
      "|(it|no)[-_][a-z]{2}");
}

SanitizerRules SanitizerRules::parse(std::string_view text) {
  const auto base = defaults();
  std::vector<std::string> stopwords;
  std::vector<std::string> arch;
  std::vector<std::string> channel;
  std::string locale;
  bool seen_stop = false, seen_arch = false, seen_channel = false, seen_locale = false;

  std::vector<std::string>* current = nullptr;
  bool in_locale = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto trimmed = text::trim(line);
    if (trimmed.empty()) continue;
    if (trimmed.front() == '[' && trimmed.back() == ']') {
      const auto section = trimmed.substr(1, trimmed.size() - 2);
      in_locale = false;
      if (section == "corporate_stopwords") {
        current = &stopwords;
        seen_stop = true;
      } else if (section == "arch_tokens") {
        current = &arch;
        seen_arch = true;
      } else if (section == "channel_tokens") {
        current = &channel;
        seen_channel = true;
      } else if (section == "locale_pattern") {
        current = nullptr;
        in_locale = true;
        seen_locale = true;
      } else {
        throw Error(ErrorCode::ParseError, "rules line " + std::to_string(line_no) +
                                               ": unknown section '" + std::string(section) + "'");
      }
      continue;
    }
    if (in_locale) {
      locale = std::string(trimmed);
    } else if (current != nullptr) {
      current->push_back(text::to_lower_ascii(trimmed));
    } else {
      throw Error(ErrorCode::ParseError,
                  "rules line " + std::to_string(line_no) + ": token outside of a section");
    }
  }
  return SanitizerRules(seen_stop ? stopwords : base.corporate_stopwords(),
                        seen_arch ? arch : base.arch_tokens(),
                        seen_channel ? channel : base.channel_tokens(),
                        seen_locale ? locale : base.locale_pattern());
}

SanitizerRules SanitizerRules::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open rules file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

bool SanitizerRules::is_stopword(std::string_view token) const {
  return compiled_->stopwords.contains(std::string(token));
}

bool SanitizerRules::is_arch_token(std::string_view token) const {
  return compiled_->arch.contains(std::string(token));
}

bool SanitizerRules::is_channel_token(std::string_view token) const {
  auto stem = token;
  while (!stem.empty() && text::is_digit(stem.back())) stem.remove_suffix(1);
  return !stem.empty() && compiled_->channel.contains(std::string(stem));
}

bool SanitizerRules::is_locale_token(std::string_view token) const {
  return std::regex_match(token.begin(), token.end(), compiled_->locale);
}

std::string sanitize_name(std::string_view raw, const SanitizerRules& rules) {
  std::string s = text::fold_ascii_lower(raw);
  s = text::strip_bracketed(s);
  if (const auto remark = s.find(" - "); remark != std::string::npos) s.erase(remark);

  std::vector<std::string> tokens;
  for (const auto piece : text::split_ws(s)) {
    auto token = strip_app_suffix(clean_name_token(piece));
    if (token.empty()) continue;
    if (rules.is_arch_token(token) || rules.is_locale_token(token) ||
        rules.is_channel_token(token) || text::is_dotted_numeric(token)) {
      continue;
    }
    tokens.push_back(std::move(token));
  }
  // corporate suffixes; the leading token always survives
  while (tokens.size() > 1 && rules.is_stopword(tokens.back())) tokens.pop_back();

  auto out = text::join(tokens, " ");
  if (out.empty()) {
    throw Error(ErrorCode::EmptyAfterSanitize,
                "name '" + std::string(raw) + "' is empty after sanitization");
  }
  return out;
}

std::string sanitize_vendor(std::string_view raw, const SanitizerRules& rules) {
  const auto folded = text::fold_ascii_lower(raw);
  std::vector<std::string> tokens;
  for (const auto piece : text::split_ws(folded)) {
    auto token = clean_vendor_token(piece);
    if (token.empty() || rules.is_stopword(token)) continue;
    tokens.push_back(std::move(token));
  }
  return text::join(tokens, " ");
}

std::string sanitize_version(std::string_view raw) {
  const auto folded = text::strip_bracketed(text::fold_ascii_lower(raw));
  std::string s;
  s.reserve(folded.size());
  for (const char c : folded) {
    if (text::is_alnum_lower(c) || c == '.' || c == '-' || c == '_' || c == '+') {
      s += c;
    } else if (text::is_space(c)) {
      s += ' ';
    }
  }
  std::string_view v = text::trim(s);
  if (v.size() >= 2 && v[0] == 'v' && text::is_digit(v[1])) v.remove_prefix(1);

  // Cut at the first separator whose following segment is not purely numeric.
  // Spaces always cut.
  std::size_t cut = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_version_separator(v[i])) continue;
    if (v[i] == ' ') {
      cut = i;
      break;
    }
    std::size_t j = i + 1;
    while (j < v.size() && !is_version_separator(v[j])) ++j;
    if (!text::all_digits(v.substr(i + 1, j - i - 1))) {
      cut = i;
      break;
    }
  }
  return std::string(v.substr(0, cut));
}

SanitizedSoftware sanitize_record(const SoftwareRecord& record, const SanitizerRules& rules) {
  return SanitizedSoftware{
      .name = sanitize_name(record.raw_name, rules),
      .vendor = sanitize_vendor(record.raw_vendor, rules),
      .version = sanitize_version(record.raw_version),
      .origin = record.record_id,
  };
}

std::string vendor_key(std::string_view sanitized_vendor) {
  std::string out(sanitized_vendor);
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

}  // namespace cpesleuth
