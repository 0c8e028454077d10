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

#include "cpesleuth/model.hpp"

#include <charconv>
#include <numeric>
#include <unordered_set>

#include "text.hpp"

namespace cpesleuth {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyName: return "EmptyName";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::EmptyAfterSanitize: return "EmptyAfterSanitize";
    case ErrorCode::BadPrefix: return "BadPrefix";
    case ErrorCode::BadComponentCount: return "BadComponentCount";
    case ErrorCode::BadPart: return "BadPart";
    case ErrorCode::BadEscape: return "BadEscape";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Storage: return "Storage";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<ErrorCode> cause)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      cause_(cause) {}

// --- Rational ---------------------------------------------------------------

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) {
    throw Error(ErrorCode::InvalidArgument, "rational with zero denominator");
  }
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const auto g = std::gcd(numerator, denominator);
  num_ = numerator / (g == 0 ? 1 : g);
  den_ = denominator / (g == 0 ? 1 : g);
}

Rational Rational::parse(std::string_view text) {
  const auto original = text;
  auto fail = [&] {
    return Error(ErrorCode::InvalidArgument,
                 "not a decimal number: '" + std::string(original) + "'");
  };
  text = text::trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  const auto int_part = text.substr(0, dot);
  const auto frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if ((int_part.empty() && frac_part.empty()) || frac_part.size() > 9 || int_part.size() > 9) {
    throw fail();
  }
  std::int64_t whole = 0;
  std::int64_t frac = 0;
  if (!int_part.empty()) {
    auto [p, ec] = std::from_chars(int_part.data(), int_part.data() + int_part.size(), whole);
    if (ec != std::errc{} || p != int_part.data() + int_part.size()) throw fail();
  }
  if (!frac_part.empty()) {
    auto [p, ec] = std::from_chars(frac_part.data(), frac_part.data() + frac_part.size(), frac);
    if (ec != std::errc{} || p != frac_part.data() + frac_part.size()) throw fail();
  }
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
  const std::int64_t num = whole * scale + frac;
  return Rational(negative ? -num : num, scale);
}

double Rational::to_double() const noexcept {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_fixed(int decimals) const {
  __int128 scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const bool negative = num_ < 0;
  const __int128 abs_num = negative ? -static_cast<__int128>(num_) : num_;
  // half-up on the absolute value
  const __int128 scaled = (abs_num * scale * 2 + den_) / (2 * static_cast<__int128>(den_));
  const auto whole = static_cast<long long>(scaled / scale);
  auto frac = static_cast<long long>(scaled % scale);
  std::string out = negative && scaled != 0 ? "-" : "";
  out += std::to_string(whole);
  if (decimals > 0) {
    std::string digits = std::to_string(frac);
    out += '.';
    out += std::string(static_cast<std::size_t>(decimals) - digits.size(), '0');
    out += digits;
  }
  return out;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

// --- TierWeight / CpeValue ----------------------------------------------------

TierWeight::TierWeight(int value) : value_(value) {
  if (value < 1 || value > kTierCount) {
    throw Error(ErrorCode::InvalidArgument, "tier weight out of range: " + std::to_string(value));
  }
}

CpeValue CpeValue::na() {
  CpeValue v;
  v.kind_ = Kind::Na;
  return v;
}

CpeValue CpeValue::literal(std::string value) {
  if (value.empty()) {
    throw Error(ErrorCode::InvalidArgument, "empty CPE literal value");
  }
  CpeValue v;
  v.kind_ = Kind::Literal;
  v.value_ = std::move(value);
  return v;
}

// --- Severity -------------------------------------------------------------------

std::string_view to_string(Severity severity) noexcept {
  switch (severity) {
    case Severity::None: return "NONE";
    case Severity::Low: return "LOW";
    case Severity::Medium: return "MEDIUM";
    case Severity::High: return "HIGH";
    case Severity::Critical: return "CRITICAL";
    case Severity::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

Severity parse_severity(std::string_view text) noexcept {
  const auto upper = text::to_upper_ascii(text::trim(text));
  if (upper == "NONE") return Severity::None;
  if (upper == "LOW") return Severity::Low;
  if (upper == "MEDIUM") return Severity::Medium;
  if (upper == "HIGH") return Severity::High;
  if (upper == "CRITICAL") return Severity::Critical;
  return Severity::Unknown;
}

Severity severity_from_cvss(double score) noexcept {
  if (!(score >= 0.0) || score > 10.0) return Severity::Unknown;
  if (score == 0.0) return Severity::None;
  if (score < 4.0) return Severity::Low;
  if (score < 7.0) return Severity::Medium;
  if (score < 9.0) return Severity::High;
  return Severity::Critical;
}

bool is_valid_cve_id(std::string_view id) noexcept {
  if (!id.starts_with("CVE-") || id.size() < 13) return false;
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  for (std::size_t i = 4; i < 8; ++i) {
    if (!is_digit(id[i])) return false;
  }
  if (id[8] != '-') return false;
  for (std::size_t i = 9; i < id.size(); ++i) {
    if (!is_digit(id[i])) return false;
  }
  return true;
}

// --- MatchConfig / records ------------------------------------------------------

void MatchConfig::validate() const {
  const Rational zero{0};
  const Rational hundred{100};
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (thresholds[i] < zero || thresholds[i] > hundred) {
      throw Error(ErrorCode::InvalidArgument, "threshold for tier " + std::to_string(i + 1) +
                                                  " outside [0,100]: " +
                                                  thresholds[i].to_fixed());
    }
  }
}

const SoftwareRecord& validate_record(const SoftwareRecord& record) {
  if (text::trim(record.raw_name).empty()) {
    throw Error(ErrorCode::EmptyName,
                "record " + std::to_string(record.record_id) + " has a blank name");
  }
  return record;
}

void validate_snapshot(std::span<const SoftwareRecord> records) {
  std::unordered_set<RecordId> seen;
  seen.reserve(records.size());
  for (const auto& record : records) {
    validate_record(record);
    if (!seen.insert(record.record_id).second) {
      throw Error(ErrorCode::DuplicateId,
                  "record_id " + std::to_string(record.record_id) + " appears twice");
    }
  }
}

}  // namespace cpesleuth
