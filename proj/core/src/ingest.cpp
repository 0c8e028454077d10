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

#include "cpesleuth/ingest.hpp"

#include <expat.h>

#include <array>
#include <exception>
#include <fstream>
#include <istream>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>

#include "cpesleuth/cpe.hpp"
#include "cpesleuth/cve_mapper.hpp"
#include "text.hpp"

namespace cpesleuth {

using nlohmann::json;

namespace {

constexpr std::size_t kUpsertBatch = 4096;

[[noreturn]] void parse_fail(std::string_view what, std::size_t line, const std::string& detail,
                             std::optional<ErrorCode> cause = std::nullopt) {
  throw Error(ErrorCode::ParseError,
              std::string(what) + " line " + std::to_string(line) + ": " + detail, cause);
}

std::string string_field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number() || it->is_boolean()) return it->dump();
  throw Error(ErrorCode::ParseError, std::string("field '") + key + "' is not a string");
}

CpeName parse_cpe_at(std::string_view s, std::string_view what, std::size_t line) {
  try {
    return parse_cpe23(s);
  } catch (const Error& e) {
    parse_fail(what, line, e.what(), e.code());
  }
}

std::optional<VersionBound> bound(const json& obj, const char* including, const char* excluding) {
  const auto inc = string_field(obj, including);
  if (!inc.empty()) return VersionBound{inc, true};
  const auto exc = string_field(obj, excluding);
  if (!exc.empty()) return VersionBound{exc, false};
  return std::nullopt;
}

CpeCriterion criterion_from(const json& match, const char* cpe_key, std::string_view what,
                            std::size_t line) {
  CpeCriterion c;
  const auto cpe = string_field(match, cpe_key);
  if (cpe.empty()) parse_fail(what, line, std::string("criterion without '") + cpe_key + "'");
  c.pattern = parse_cpe_at(cpe, what, line);
  c.vulnerable = match.value("vulnerable", true);
  c.version_start = bound(match, "versionStartIncluding", "versionStartExcluding");
  c.version_end = bound(match, "versionEndIncluding", "versionEndExcluding");
  if (c.version_start && c.version_end &&
      version_compare(c.version_start->value, c.version_end->value) > 0) {
    parse_fail(what, line,
               "version range start " + c.version_start->value + " exceeds end " +
                   c.version_end->value);
  }
  return c;
}

void finish_cve(CveRecord& r, std::string_view severity_text, std::string_view what,
                std::size_t line) {
  if (!is_valid_cve_id(r.cve_id)) parse_fail(what, line, "bad CVE id '" + r.cve_id + "'");
  if (r.cvss_score && (*r.cvss_score < 0.0 || *r.cvss_score > 10.0)) {
    parse_fail(what, line, "cvss score out of range for " + r.cve_id);
  }
  r.severity = parse_severity(severity_text);
  if (r.severity == Severity::Unknown && r.cvss_score) r.severity = severity_from_cvss(*r.cvss_score);
}

// --- official XML dictionary -------------------------------------------------

std::string_view local_name(const XML_Char* name) {
  std::string_view n(name);
  const auto colon = n.rfind(':');
  return colon == std::string_view::npos ? n : n.substr(colon + 1);
}

const XML_Char* attribute(const XML_Char** attrs, std::string_view key) {
  for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
    if (std::string_view(attrs[i]) == key) return attrs[i + 1];
  }
  return nullptr;
}

struct XmlState {
  XML_Parser parser = nullptr;
  const CpeSink* sink = nullptr;
  bool in_item = false;
  bool deprecated = false;
  bool in_title = false;
  bool title_is_english = false;
  std::string title_text;
  std::optional<std::string> title;
  std::optional<std::string> english_title;
  std::optional<std::string> cpe23;
  std::size_t item_line = 0;
  std::exception_ptr error;

  void fail(std::exception_ptr e) {
    if (!error) error = std::move(e);
    XML_StopParser(parser, XML_FALSE);
  }
};

void XMLCALL xml_start(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto& st = *static_cast<XmlState*>(user);
  const auto local = local_name(name);
  if (local == "cpe-item") {
    st.in_item = true;
    st.item_line = XML_GetCurrentLineNumber(st.parser);
    const auto* dep = attribute(attrs, "deprecated");
    st.deprecated = dep != nullptr && std::string_view(dep) == "true";
    st.title.reset();
    st.english_title.reset();
    st.cpe23.reset();
  } else if (st.in_item && local == "title") {
    st.in_title = true;
    st.title_text.clear();
    const auto* lang = attribute(attrs, "xml:lang");
    st.title_is_english = lang != nullptr && text::to_lower_ascii(lang).starts_with("en");
  } else if (st.in_item && local == "cpe23-item") {
    if (const auto* n = attribute(attrs, "name")) st.cpe23 = n;
  }
}

void XMLCALL xml_end(void* user, const XML_Char* name) {
  auto& st = *static_cast<XmlState*>(user);
  const auto local = local_name(name);
  if (st.in_title && local == "title") {
    st.in_title = false;
    if (!st.title) st.title = st.title_text;
    if (st.title_is_english && !st.english_title) st.english_title = st.title_text;
  } else if (st.in_item && local == "cpe-item") {
    st.in_item = false;
    try {
      if (!st.cpe23) {
        parse_fail("cpe dictionary", st.item_line, "cpe-item without a cpe23-item binding");
      }
      auto title = st.english_title ? *st.english_title : st.title.value_or("");
      (*st.sink)(make_cpe_entry(parse_cpe_at(*st.cpe23, "cpe dictionary", st.item_line),
                                std::move(title), st.deprecated));
    } catch (...) {
      st.fail(std::current_exception());
    }
  }
}

void XMLCALL xml_text(void* user, const XML_Char* s, int len) {
  auto& st = *static_cast<XmlState*>(user);
  if (st.in_title) st.title_text.append(s, static_cast<std::size_t>(len));
}

template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    fn(line, line_no);
  }
}

json parse_json_line(const std::string& line, std::string_view what, std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    parse_fail(what, line_no, e.what());
  }
}

std::ifstream open_source(const SourceDescriptor& src) {
  std::ifstream in(src.path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + src.path.string());
  return in;
}

void record_source(Catalog& catalog, const SourceDescriptor& src) {
  catalog.meta().sources.push_back(SourceRecord{
      std::string(to_string(src.kind)), std::string(to_string(src.format)), src.path.string(),
      std::chrono::duration_cast<std::chrono::seconds>(src.fetched_at.time_since_epoch()).count()});
}

InventoryLoad inventory_from_rows(const std::vector<json>& rows) {
  InventoryLoad out;
  RecordId next = 1;
  for (const auto& row : rows) {
    if (!row.is_object()) {
      ++out.skipped;
      continue;
    }
    SoftwareRecord r;
    r.raw_name = string_field(row, "name");
    r.raw_version = string_field(row, "version");
    r.raw_vendor = string_field(row, "publisher");
    if (const auto host = string_field(row, "source_host"); !host.empty()) r.source_host = host;
    if (text::trim(r.raw_name).empty()) {
      ++out.skipped;
      continue;
    }
    r.record_id = next++;
    out.records.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::string_view to_string(SourceKind kind) noexcept {
  switch (kind) {
    case SourceKind::CpeDictionary: return "cpe_dictionary";
    case SourceKind::CveFeed: return "cve_feed";
    case SourceKind::Inventory: return "inventory";
  }
  return "unknown";
}

std::string_view to_string(SourceFormat format) noexcept {
  switch (format) {
    case SourceFormat::OfficialXml: return "official_xml";
    case SourceFormat::NvdJson: return "nvd_json";
    case SourceFormat::Jsonl: return "jsonl";
    case SourceFormat::OsqueryJson: return "osquery_json";
  }
  return "unknown";
}

SourceKind parse_source_kind(std::string_view text) {
  if (text == "cpe" || text == "cpe_dictionary") return SourceKind::CpeDictionary;
  if (text == "cve" || text == "cve_feed") return SourceKind::CveFeed;
  if (text == "inventory") return SourceKind::Inventory;
  throw Error(ErrorCode::UnsupportedFormat, "unknown source kind '" + std::string(text) + "'");
}

SourceFormat parse_source_format(std::string_view text) {
  if (text == "official_xml" || text == "xml") return SourceFormat::OfficialXml;
  if (text == "nvd_json") return SourceFormat::NvdJson;
  if (text == "jsonl") return SourceFormat::Jsonl;
  if (text == "osquery_json") return SourceFormat::OsqueryJson;
  throw Error(ErrorCode::UnsupportedFormat, "unknown source format '" + std::string(text) + "'");
}

void SourceDescriptor::validate() const {
  bool ok = false;
  switch (kind) {
    case SourceKind::CpeDictionary:
      ok = format == SourceFormat::OfficialXml || format == SourceFormat::Jsonl;
      break;
    case SourceKind::CveFeed:
      ok = format == SourceFormat::NvdJson || format == SourceFormat::Jsonl;
      break;
    case SourceKind::Inventory:
      ok = format == SourceFormat::OsqueryJson || format == SourceFormat::Jsonl;
      break;
  }
  if (!ok) {
    throw Error(ErrorCode::UnsupportedFormat, "format " + std::string(to_string(format)) +
                                                  " is not valid for " +
                                                  std::string(to_string(kind)));
  }
}

std::string derive_title_norm(std::string_view title, const CpeValue& version) {
  const auto folded = text::fold_ascii_lower(title);
  const std::string version_literal =
      version.is_literal() ? text::to_lower_ascii(version.value()) : std::string{};
  auto keep = [](char c) { return text::is_alnum_lower(c) || c == '+'; };
  std::vector<std::string> tokens;
  for (auto token : text::split_ws(folded)) {
    while (!token.empty() && !keep(token.front())) token.remove_prefix(1);
    while (!token.empty() && !keep(token.back())) token.remove_suffix(1);
    if (token.empty() || token == version_literal) continue;
    tokens.emplace_back(token);
  }
  return text::join(tokens, " ");
}

std::string derive_product_norm(const CpeValue& product) {
  if (!product.is_literal()) return {};
  std::string out;
  for (const char c : product.value()) {
    const char mapped = c == '_' ? ' ' : c;
    if (mapped == ' ' && (out.empty() || out.back() == ' ')) continue;
    out += mapped;
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

CpeEntry make_cpe_entry(CpeName name, std::string title, bool deprecated) {
  CpeEntry e;
  e.title_norm = derive_title_norm(title, name.version);
  e.product_norm = derive_product_norm(name.product);
  e.name = std::move(name);
  e.title = std::move(title);
  e.deprecated = deprecated;
  return e;
}

void read_cpe_jsonl(std::istream& in, const CpeSink& sink) {
  constexpr std::string_view what = "cpe jsonl";
  for_each_line(in, [&](const std::string& line, std::size_t line_no) {
    const auto obj = parse_json_line(line, what, line_no);
    if (!obj.is_object()) parse_fail(what, line_no, "expected an object");
    std::string cpe;
    std::string title;
    try {
      cpe = string_field(obj, "cpe23");
      title = string_field(obj, "title");
    } catch (const Error& e) {
      parse_fail(what, line_no, e.what());
    }
    if (cpe.empty()) parse_fail(what, line_no, "missing 'cpe23'");
    const bool deprecated = obj.contains("deprecated") && obj["deprecated"].is_boolean() &&
                            obj["deprecated"].get<bool>();
    sink(make_cpe_entry(parse_cpe_at(cpe, what, line_no), std::move(title), deprecated));
  });
}

void read_cpe_official_xml(std::istream& in, const CpeSink& sink) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate(nullptr), &XML_ParserFree);
  if (!parser) throw Error(ErrorCode::Io, "cannot allocate XML parser");
  XmlState st;
  st.parser = parser.get();
  st.sink = &sink;
  XML_SetUserData(parser.get(), &st);
  XML_SetElementHandler(parser.get(), xml_start, xml_end);
  XML_SetCharacterDataHandler(parser.get(), xml_text);

  std::array<char, 1 << 16> buffer{};
  bool done = false;
  while (!done) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    const auto got = static_cast<int>(in.gcount());
    done = got == 0 || in.eof();
    if (XML_Parse(parser.get(), buffer.data(), got, done ? XML_TRUE : XML_FALSE) ==
        XML_STATUS_ERROR) {
      if (st.error) std::rethrow_exception(st.error);
      parse_fail("cpe dictionary xml", XML_GetCurrentLineNumber(parser.get()),
                 XML_ErrorString(XML_GetErrorCode(parser.get())));
    }
  }
  if (st.error) std::rethrow_exception(st.error);
}

std::vector<CveRecord> read_cves_nvd_json(std::istream& in) {
  constexpr std::string_view what = "nvd json";
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    parse_fail(what, 0, e.what());
  }
  std::vector<CveRecord> out;
  const auto vulns = doc.find("vulnerabilities");
  if (!doc.is_object() || vulns == doc.end() || !vulns->is_array()) {
    parse_fail(what, 0, "missing 'vulnerabilities' array");
  }
  std::size_t index = 0;
  for (const auto& item : *vulns) {
    ++index;
    try {
      const auto& cve = item.at("cve");
      CveRecord r;
      r.cve_id = cve.at("id").get<std::string>();
      if (const auto d = cve.find("descriptions"); d != cve.end()) {
        for (const auto& desc : *d) {
          if (desc.value("lang", "") == "en") {
            r.description = desc.value("value", "");
            break;
          }
        }
      }
      std::string severity;
      if (const auto m = cve.find("metrics"); m != cve.end()) {
        for (const char* key : {"cvssMetricV31", "cvssMetricV30", "cvssMetricV2"}) {
          const auto metric = m->find(key);
          if (metric == m->end() || !metric->is_array() || metric->empty()) continue;
          // prefer the NVD primary assessment
          const json* chosen = &metric->front();
          for (const auto& candidate : *metric) {
            if (candidate.value("type", "") == "Primary") {
              chosen = &candidate;
              break;
            }
          }
          const auto& data = chosen->at("cvssData");
          r.cvss_score = data.at("baseScore").get<double>();
          severity = data.value("baseSeverity", chosen->value("baseSeverity", ""));
          break;
        }
      }
      if (const auto configs = cve.find("configurations"); configs != cve.end()) {
        for (const auto& config : *configs) {
          for (const auto& node : config.value("nodes", json::array())) {
            for (const auto& match : node.value("cpeMatch", json::array())) {
              r.criteria.push_back(criterion_from(match, "criteria", what, index));
            }
          }
        }
      }
      finish_cve(r, severity, what, index);
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      parse_fail(what, index, std::string("vulnerability record: ") + e.what());
    }
  }
  return out;
}

std::vector<CveRecord> read_cves_jsonl(std::istream& in) {
  constexpr std::string_view what = "cve jsonl";
  std::vector<CveRecord> out;
  for_each_line(in, [&](const std::string& line, std::size_t line_no) {
    const auto obj = parse_json_line(line, what, line_no);
    if (!obj.is_object()) parse_fail(what, line_no, "expected an object");
    try {
      CveRecord r;
      r.cve_id = string_field(obj, "cve_id");
      r.description = string_field(obj, "description");
      if (const auto c = obj.find("cvss"); c != obj.end() && c->is_number()) {
        r.cvss_score = c->get<double>();
      }
      for (const auto& match : obj.value("criteria", json::array())) {
        r.criteria.push_back(criterion_from(match, "cpe23", what, line_no));
      }
      finish_cve(r, string_field(obj, "severity"), what, line_no);
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      parse_fail(what, line_no, e.what());
    }
  });
  return out;
}

InventoryLoad read_inventory_osquery_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    parse_fail("osquery json", 0, e.what());
  }
  if (!doc.is_array()) parse_fail("osquery json", 0, "expected an array of rows");
  try {
    return inventory_from_rows(doc.get<std::vector<json>>());
  } catch (const Error& e) {
    parse_fail("osquery json", 0, e.what());
  }
}

InventoryLoad read_inventory_jsonl(std::istream& in) {
  std::vector<json> rows;
  for_each_line(in, [&](const std::string& line, std::size_t line_no) {
    rows.push_back(parse_json_line(line, "inventory jsonl", line_no));
  });
  try {
    return inventory_from_rows(rows);
  } catch (const Error& e) {
    parse_fail("inventory jsonl", 0, e.what());
  }
}

std::size_t load_cpe_dictionary(const SourceDescriptor& src, Catalog& catalog) {
  if (src.kind != SourceKind::CpeDictionary) {
    throw Error(ErrorCode::UnsupportedFormat, "source is not a CPE dictionary");
  }
  src.validate();
  auto in = open_source(src);
  std::size_t count = 0;
  std::vector<CpeEntry> batch;
  batch.reserve(kUpsertBatch);
  const CpeSink sink = [&](CpeEntry e) {
    batch.push_back(std::move(e));
    ++count;
    if (batch.size() == kUpsertBatch) {
      catalog.upsert_cpe_entries(batch);
      batch.clear();
    }
  };
  if (src.format == SourceFormat::OfficialXml) {
    read_cpe_official_xml(in, sink);
  } else {
    read_cpe_jsonl(in, sink);
  }
  catalog.upsert_cpe_entries(batch);
  record_source(catalog, src);
  return count;
}

std::size_t load_cves(const SourceDescriptor& src, Catalog& catalog) {
  if (src.kind != SourceKind::CveFeed) {
    throw Error(ErrorCode::UnsupportedFormat, "source is not a CVE feed");
  }
  src.validate();
  auto in = open_source(src);
  const auto records =
      src.format == SourceFormat::NvdJson ? read_cves_nvd_json(in) : read_cves_jsonl(in);
  catalog.upsert_cves(records);
  record_source(catalog, src);
  return records.size();
}

InventoryLoad load_inventory(const SourceDescriptor& src) {
  if (src.kind != SourceKind::Inventory) {
    throw Error(ErrorCode::UnsupportedFormat, "source is not an inventory");
  }
  src.validate();
  auto in = open_source(src);
  return src.format == SourceFormat::OsqueryJson ? read_inventory_osquery_json(in)
                                                 : read_inventory_jsonl(in);
}

}  // namespace cpesleuth
