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

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cpesleuth {

enum class ErrorCode {
  EmptyName,
  DuplicateId,
  EmptyAfterSanitize,
  BadPrefix,
  BadComponentCount,
  BadPart,
  BadEscape,
  ParseError,
  UnsupportedFormat,
  InvalidArgument,
  Storage,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries an ErrorCode. ParseError
/// additionally carries the underlying cause (e.g. BadPart for a dictionary
/// record whose CPE string has an invalid part).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<ErrorCode> cause = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<ErrorCode> cause() const noexcept { return cause_; }

 private:
  ErrorCode code_;
  std::optional<ErrorCode> cause_;
};

/// Exact non-negative-denominator fraction. Scores and thresholds are kept
/// exact so that threshold tests do not depend on floating point.
class Rational {
 public:
  constexpr Rational() noexcept = default;
  Rational(std::int64_t numerator, std::int64_t denominator = 1);

  /// Accepts "70", "67.5", "-1.25"; at most 9 fractional digits.
  static Rational parse(std::string_view text);

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }

  double to_double() const noexcept;
  /// Half-up rounding to a fixed number of decimals ("93.33").
  std::string to_fixed(int decimals = 2) const;

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) noexcept;

  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Retrieval tier priority; 1 is the most confident tier.
class TierWeight {
 public:
  explicit TierWeight(int value);

  int value() const noexcept { return value_; }
  std::size_t index() const noexcept { return static_cast<std::size_t>(value_ - 1); }

  friend auto operator<=>(const TierWeight&, const TierWeight&) = default;

 private:
  int value_;
};

inline constexpr int kTierCount = 4;

using RecordId = std::uint64_t;

struct SoftwareRecord {
  std::string raw_name;
  std::string raw_vendor;
  std::string raw_version;
  std::optional<std::string> source_host;
  RecordId record_id = 0;

  bool operator==(const SoftwareRecord&) const = default;
};

struct SanitizedSoftware {
  std::string name;
  std::string vendor;
  std::string version;
  RecordId origin = 0;

  bool operator==(const SanitizedSoftware&) const = default;
};

/// One CPE attribute value: a literal, or one of the logical values ANY/NA.
class CpeValue {
 public:
  enum class Kind { Any, Na, Literal };

  CpeValue() = default;
  static CpeValue any() { return CpeValue{}; }
  static CpeValue na();
  static CpeValue literal(std::string value);

  Kind kind() const noexcept { return kind_; }
  bool is_any() const noexcept { return kind_ == Kind::Any; }
  bool is_na() const noexcept { return kind_ == Kind::Na; }
  bool is_literal() const noexcept { return kind_ == Kind::Literal; }
  /// Empty unless is_literal().
  const std::string& value() const noexcept { return value_; }

  bool operator==(const CpeValue&) const = default;

 private:
  Kind kind_ = Kind::Any;
  std::string value_;
};

enum class CpePart : char { Application = 'a', Hardware = 'h', OperatingSystem = 'o' };

/// The 11-attribute well-formed name bound by a "cpe:2.3:..." string.
struct CpeName {
  CpePart part = CpePart::Application;
  CpeValue vendor;
  CpeValue product;
  CpeValue version;
  CpeValue update;
  CpeValue edition;
  CpeValue language;
  CpeValue sw_edition;
  CpeValue target_sw;
  CpeValue target_hw;
  CpeValue other;

  bool operator==(const CpeName&) const = default;
};

struct CpeEntry {
  CpeName name;
  std::string title;
  std::string title_norm;
  std::string product_norm;
  bool deprecated = false;

  /// Canonical formatted-string binding of `name`.
  std::string cpe23() const;

  bool operator==(const CpeEntry&) const = default;
};

struct MatchCandidate {
  std::reference_wrapper<const CpeEntry> entry;
  TierWeight weight;
};

struct TraceEntry {
  std::string cpe_string;
  TierWeight weight;
  Rational score;
  bool passed_threshold = false;
  bool deprecated = false;

  bool operator==(const TraceEntry&) const = default;
};

struct MatchedCpe {
  std::string cpe_string;
  Rational score;
  TierWeight weight;

  bool operator==(const MatchedCpe&) const = default;
};

struct MatchResult {
  SoftwareRecord software;
  std::optional<SanitizedSoftware> sanitized;
  std::optional<MatchedCpe> matched;
  std::vector<TraceEntry> trace;
  /// Set when the record could not be matched at all (e.g. the name
  /// sanitized to nothing).
  std::optional<std::string> error;

  bool operator==(const MatchResult&) const = default;
};

enum class Severity { None, Low, Medium, High, Critical, Unknown };

std::string_view to_string(Severity severity) noexcept;
/// Case-insensitive; anything unrecognised maps to Unknown.
Severity parse_severity(std::string_view text) noexcept;
/// CVSS v3 qualitative bands.
Severity severity_from_cvss(double score) noexcept;

struct VersionBound {
  std::string value;
  bool inclusive = true;

  bool operator==(const VersionBound&) const = default;
};

struct CpeCriterion {
  CpeName pattern;
  bool vulnerable = true;
  std::optional<VersionBound> version_start;
  std::optional<VersionBound> version_end;

  bool operator==(const CpeCriterion&) const = default;
};

struct CveRecord {
  std::string cve_id;
  std::string description;
  Severity severity = Severity::Unknown;
  std::optional<double> cvss_score;
  std::vector<CpeCriterion> criteria;

  bool operator==(const CveRecord&) const = default;
};

bool is_valid_cve_id(std::string_view id) noexcept;

struct MatchConfig {
  std::array<Rational, kTierCount> thresholds{Rational{70}, Rational{67}, Rational{64},
                                              Rational{60}};
  bool include_deprecated = false;

  const Rational& threshold(TierWeight weight) const { return thresholds[weight.index()]; }
  /// Throws InvalidArgument unless every threshold lies in [0, 100].
  void validate() const;
};

/// Returns `record` unchanged; throws EmptyName if the name is blank.
const SoftwareRecord& validate_record(const SoftwareRecord& record);
/// Checks every record and record_id uniqueness (DuplicateId).
void validate_snapshot(std::span<const SoftwareRecord> records);

}  // namespace cpesleuth
