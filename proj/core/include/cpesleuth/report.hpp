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

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "cpesleuth/comparison.hpp"
#include "cpesleuth/cve_mapper.hpp"

namespace cpesleuth {

enum class ReportFormat { Json, Csv, Table };

/// "json", "csv", "table" (also "text-table"); throws UnsupportedFormat.
ReportFormat parse_report_format(std::string_view text);
std::string_view to_string(ReportFormat format) noexcept;

struct ReportOptions {
  /// Written as "generated_at" in JSON only. Leave unset for byte-stable
  /// output.
  std::optional<std::string> timestamp;
};

/// Serializes findings and an optional detection report. Output depends only
/// on the arguments.
///
/// json:  {"findings":[...],"report":{...}|null}
/// csv:   header `software,version,cpe,cve_id,severity,cvss`, one row per
///        (software, cve) pair, RFC 4180 quoting
/// table: per-app Yes/blank grid with a "Total Detected" row, then findings
std::string emit_report(const std::optional<DetectionReport>& report,
                        std::span<const VulnerabilityFinding> findings, ReportFormat format,
                        const ReportOptions& options = {});

}  // namespace cpesleuth
