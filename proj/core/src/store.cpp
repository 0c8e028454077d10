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

#include "cpesleuth/store.hpp"

#include <fcntl.h>
#include <signal.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>
#include <sqlite3.h>

#include "cpesleuth/cpe.hpp"
#include "cpesleuth/ingest.hpp"

namespace cpesleuth {
namespace fs = std::filesystem;

namespace {

constexpr const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS meta (key TEXT PRIMARY KEY, value TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS sources (
  id INTEGER PRIMARY KEY, kind TEXT NOT NULL, format TEXT NOT NULL,
  uri TEXT NOT NULL, fetched_at INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS cpe (
  cpe23 TEXT PRIMARY KEY, title TEXT NOT NULL, title_norm TEXT NOT NULL,
  product_norm TEXT NOT NULL, deprecated INTEGER NOT NULL);
CREATE INDEX IF NOT EXISTS cpe_title_norm ON cpe(title_norm);
CREATE INDEX IF NOT EXISTS cpe_product_norm ON cpe(product_norm);
CREATE TABLE IF NOT EXISTS nvd_cves (
  cve_id TEXT PRIMARY KEY, description TEXT NOT NULL, severity TEXT NOT NULL,
  cvss REAL, criteria TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS inventory (
  record_id INTEGER PRIMARY KEY, name TEXT NOT NULL, vendor TEXT NOT NULL,
  version TEXT NOT NULL, source_host TEXT);
CREATE TABLE IF NOT EXISTS programs (
  record_id INTEGER PRIMARY KEY, name TEXT NOT NULL, vendor TEXT NOT NULL,
  version TEXT NOT NULL, source_host TEXT,
  san_name TEXT, san_vendor TEXT, san_version TEXT,
  cpe23 TEXT, score_num INTEGER, score_den INTEGER, weight INTEGER, match_error TEXT);
CREATE TABLE IF NOT EXISTS program_cves (
  record_id INTEGER NOT NULL, cpe23 TEXT NOT NULL, cve_id TEXT NOT NULL,
  PRIMARY KEY (record_id, cve_id));
)sql";

[[noreturn]] void fail(sqlite3* db, const std::string& what) {
  throw Error(ErrorCode::Storage, what + ": " + (db ? sqlite3_errmsg(db) : "no database"));
}

class Statement {
 public:
  Statement(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) fail(db, "prepare");
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  Statement& bind(int i, std::string_view v) {
    check(sqlite3_bind_text(stmt_, i, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT));
    return *this;
  }
  Statement& bind(int i, std::int64_t v) {
    check(sqlite3_bind_int64(stmt_, i, v));
    return *this;
  }
  Statement& bind(int i, double v) {
    check(sqlite3_bind_double(stmt_, i, v));
    return *this;
  }
  Statement& bind_null(int i) {
    check(sqlite3_bind_null(stmt_, i));
    return *this;
  }
  Statement& bind_opt(int i, const std::optional<std::string>& v) {
    return v ? bind(i, std::string_view(*v)) : bind_null(i);
  }

  /// true while rows remain.
  bool step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    fail(db_, "step");
  }
  void run() {
    step();
    sqlite3_reset(stmt_);
    sqlite3_clear_bindings(stmt_);
  }

  bool is_null(int col) const { return sqlite3_column_type(stmt_, col) == SQLITE_NULL; }
  std::string text(int col) const {
    const auto* p = reinterpret_cast<const char*>(sqlite3_column_text(stmt_, col));
    return p ? std::string(p, static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col))) : "";
  }
  std::optional<std::string> opt_text(int col) const {
    if (is_null(col)) return std::nullopt;
    return text(col);
  }
  std::int64_t int64(int col) const { return sqlite3_column_int64(stmt_, col); }
  double real(int col) const { return sqlite3_column_double(stmt_, col); }

 private:
  void check(int rc) {
    if (rc != SQLITE_OK) fail(db_, "bind");
  }
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

void exec(sqlite3* db, const char* sql) {
  char* msg = nullptr;
  if (sqlite3_exec(db, sql, nullptr, nullptr, &msg) != SQLITE_OK) {
    std::string what = msg ? msg : "exec";
    sqlite3_free(msg);
    throw Error(ErrorCode::Storage, what);
  }
}

// Commits on commit(), rolls back otherwise.
class Transaction {
 public:
  explicit Transaction(sqlite3* db) : db_(db) { exec(db, "BEGIN IMMEDIATE"); }
  ~Transaction() {
    if (!done_) sqlite3_exec(db_, "ROLLBACK", nullptr, nullptr, nullptr);
  }
  void commit() {
    exec(db_, "COMMIT");
    done_ = true;
  }

 private:
  sqlite3* db_;
  bool done_ = false;
};

nlohmann::json criteria_json(const std::vector<CpeCriterion>& criteria) {
  auto bound = [](const std::optional<VersionBound>& b) -> nlohmann::json {
    if (!b) return nullptr;
    return {{"value", b->value}, {"inclusive", b->inclusive}};
  };
  auto out = nlohmann::json::array();
  for (const auto& c : criteria) {
    out.push_back({{"cpe23", format_cpe23(c.pattern)},
                   {"vulnerable", c.vulnerable},
                   {"start", bound(c.version_start)},
                   {"end", bound(c.version_end)}});
  }
  return out;
}

std::vector<CpeCriterion> parse_criteria(const std::string& text) {
  auto bound = [](const nlohmann::json& j) -> std::optional<VersionBound> {
    if (j.is_null()) return std::nullopt;
    return VersionBound{j.at("value").get<std::string>(), j.at("inclusive").get<bool>()};
  };
  std::vector<CpeCriterion> out;
  for (const auto& j : nlohmann::json::parse(text)) {
    out.push_back({parse_cpe23(j.at("cpe23").get<std::string>()), j.at("vulnerable").get<bool>(),
                   bound(j.at("start")), bound(j.at("end"))});
  }
  return out;
}

bool pid_alive(pid_t pid) { return pid > 0 && (::kill(pid, 0) == 0 || errno == EPERM); }

}  // namespace

fs::path resolve_catalog_dir(const std::optional<fs::path>& flag, const EnvLookup& env) {
  if (flag && !flag->empty()) return *flag;
  const EnvLookup lookup = env ? env : [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
  };
  if (auto v = lookup(kCatalogEnvVar)) return *v;
  if (auto v = lookup("XDG_DATA_HOME")) return fs::path(*v) / "cpesleuth";
  if (auto v = lookup("HOME")) return fs::path(*v) / ".local" / "share" / "cpesleuth";
  throw Error(ErrorCode::InvalidArgument,
              "cannot determine catalog directory; pass --catalog or set CPESLEUTH_DATA");
}

CatalogLock::CatalogLock(const fs::path& dir) : path_(dir / "catalog.lock") {
  std::error_code ec;
  fs::create_directories(dir, ec);
  for (int attempt = 0; attempt < 2; ++attempt) {
    const int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd >= 0) {
      const auto pid = std::to_string(::getpid()) + "\n";
      [[maybe_unused]] auto n = ::write(fd, pid.data(), pid.size());
      ::close(fd);
      return;
    }
    if (errno != EEXIST) {
      throw Error(ErrorCode::Io, "cannot create lock " + path_.string() + ": " + std::strerror(errno));
    }
    pid_t owner = 0;
    std::ifstream(path_) >> owner;
    if (pid_alive(owner)) {
      throw Error(ErrorCode::Storage,
                  "catalog is locked by process " + std::to_string(owner) + " (" + path_.string() + ")");
    }
    fs::remove(path_, ec);  // stale
  }
  throw Error(ErrorCode::Storage, "could not acquire catalog lock " + path_.string());
}

CatalogLock::~CatalogLock() {
  std::error_code ec;
  fs::remove(path_, ec);
}

struct Store::Impl {
  sqlite3* db = nullptr;
  ~Impl() { sqlite3_close(db); }
};

Store::Store(const fs::path& db_path) : impl_(std::make_unique<Impl>()) {
  if (db_path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(db_path.parent_path(), ec);
  }
  if (sqlite3_open(db_path.c_str(), &impl_->db) != SQLITE_OK) fail(impl_->db, "open " + db_path.string());
  sqlite3_busy_timeout(impl_->db, 5000);
  exec(impl_->db, "PRAGMA foreign_keys = ON");
  exec(impl_->db, kSchema);

  Statement get(impl_->db, "SELECT value FROM meta WHERE key = 'schema_version'");
  if (get.step()) {
    const auto stored = get.text(0);
    if (stored != std::to_string(kSchemaVersion)) {
      throw Error(ErrorCode::Storage, "catalog schema version " + stored + " is not supported (expected " +
                                          std::to_string(kSchemaVersion) + ")");
    }
  } else {
    Statement put(impl_->db, "INSERT INTO meta(key, value) VALUES ('schema_version', ?)");
    put.bind(1, std::to_string(kSchemaVersion)).run();
  }
}

Store::~Store() = default;
Store::Store(Store&&) noexcept = default;
Store& Store::operator=(Store&&) noexcept = default;

Catalog Store::load_catalog() const {
  sqlite3* db = impl_->db;
  Catalog catalog;

  std::vector<CpeEntry> entries;
  Statement cpe(db, "SELECT cpe23, title, title_norm, product_norm, deprecated FROM cpe ORDER BY rowid");
  while (cpe.step()) {
    entries.push_back(CpeEntry{parse_cpe23(cpe.text(0)), cpe.text(1), cpe.text(2), cpe.text(3),
                               cpe.int64(4) != 0});
  }
  catalog.upsert_cpe_entries(entries);

  std::vector<CveRecord> cves;
  Statement cve(db, "SELECT cve_id, description, severity, cvss, criteria FROM nvd_cves ORDER BY rowid");
  while (cve.step()) {
    CveRecord r{cve.text(0), cve.text(1), parse_severity(cve.text(2)), std::nullopt, {}};
    if (!cve.is_null(3)) r.cvss_score = cve.real(3);
    try {
      r.criteria = parse_criteria(cve.text(4));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::Storage, "corrupt criteria for " + r.cve_id + ": " + e.what());
    }
    cves.push_back(std::move(r));
  }
  catalog.upsert_cves(cves);

  std::vector<SoftwareRecord> inventory;
  Statement inv(db, "SELECT record_id, name, vendor, version, source_host FROM inventory ORDER BY record_id");
  while (inv.step()) {
    inventory.push_back({inv.text(1), inv.text(2), inv.text(3), inv.opt_text(4),
                         static_cast<RecordId>(inv.int64(0))});
  }
  catalog.set_inventory(std::move(inventory));

  Statement src(db, "SELECT kind, format, uri, fetched_at FROM sources ORDER BY id");
  while (src.step()) {
    catalog.meta().sources.push_back({src.text(0), src.text(1), src.text(2), src.int64(3)});
  }
  return catalog;
}

void Store::save_catalog(const Catalog& catalog) {
  sqlite3* db = impl_->db;
  Transaction tx(db);
  exec(db, "DELETE FROM cpe; DELETE FROM nvd_cves; DELETE FROM inventory; DELETE FROM sources;");

  Statement cpe(db, "INSERT INTO cpe(cpe23, title, title_norm, product_norm, deprecated) VALUES (?,?,?,?,?)");
  for (const auto& e : catalog.cpe_entries()) {
    cpe.bind(1, e.cpe23()).bind(2, e.title).bind(3, e.title_norm).bind(4, e.product_norm);
    cpe.bind(5, std::int64_t{e.deprecated ? 1 : 0}).run();
  }

  Statement cve(db, "INSERT INTO nvd_cves(cve_id, description, severity, cvss, criteria) VALUES (?,?,?,?,?)");
  for (const auto& r : catalog.cve_records()) {
    cve.bind(1, r.cve_id).bind(2, r.description).bind(3, to_string(r.severity));
    if (r.cvss_score) {
      cve.bind(4, *r.cvss_score);
    } else {
      cve.bind_null(4);
    }
    cve.bind(5, criteria_json(r.criteria).dump()).run();
  }

  Statement inv(db, "INSERT INTO inventory(record_id, name, vendor, version, source_host) VALUES (?,?,?,?,?)");
  for (const auto& r : catalog.inventory()) {
    inv.bind(1, static_cast<std::int64_t>(r.record_id)).bind(2, r.raw_name).bind(3, r.raw_vendor);
    inv.bind(4, r.raw_version).bind_opt(5, r.source_host).run();
  }

  Statement src(db, "INSERT INTO sources(kind, format, uri, fetched_at) VALUES (?,?,?,?)");
  for (const auto& s : catalog.meta().sources) {
    src.bind(1, s.kind).bind(2, s.format).bind(3, s.uri_or_path).bind(4, s.fetched_at).run();
  }
  tx.commit();
}

void Store::save_results(std::span<const MatchResult> results) {
  sqlite3* db = impl_->db;
  Transaction tx(db);
  exec(db, "DELETE FROM programs; DELETE FROM program_cves;");
  Statement ins(db,
                "INSERT INTO programs(record_id, name, vendor, version, source_host, san_name, san_vendor,"
                " san_version, cpe23, score_num, score_den, weight, match_error)"
                " VALUES (?,?,?,?,?,?,?,?,?,?,?,?,?)");
  for (const auto& r : results) {
    const auto& s = r.software;
    ins.bind(1, static_cast<std::int64_t>(s.record_id)).bind(2, s.raw_name).bind(3, s.raw_vendor);
    ins.bind(4, s.raw_version).bind_opt(5, s.source_host);
    if (r.sanitized) {
      ins.bind(6, r.sanitized->name).bind(7, r.sanitized->vendor).bind(8, r.sanitized->version);
    } else {
      ins.bind_null(6).bind_null(7).bind_null(8);
    }
    if (r.matched) {
      ins.bind(9, r.matched->cpe_string)
          .bind(10, r.matched->score.numerator())
          .bind(11, r.matched->score.denominator())
          .bind(12, std::int64_t{r.matched->weight.value()});
    } else {
      ins.bind_null(9).bind_null(10).bind_null(11).bind_null(12);
    }
    ins.bind_opt(13, r.error).run();
  }
  tx.commit();
}

std::vector<MatchResult> Store::load_results() const {
  Statement q(impl_->db,
              "SELECT record_id, name, vendor, version, source_host, san_name, san_vendor, san_version,"
              " cpe23, score_num, score_den, weight, match_error FROM programs ORDER BY record_id");
  std::vector<MatchResult> out;
  while (q.step()) {
    MatchResult r;
    r.software = {q.text(1), q.text(2), q.text(3), q.opt_text(4), static_cast<RecordId>(q.int64(0))};
    if (!q.is_null(5)) {
      r.sanitized = SanitizedSoftware{q.text(5), q.text(6), q.text(7), r.software.record_id};
    }
    if (!q.is_null(8)) {
      r.matched = MatchedCpe{q.text(8), Rational(q.int64(9), q.int64(10)),
                             TierWeight(static_cast<int>(q.int64(11)))};
    }
    r.error = q.opt_text(12);
    out.push_back(std::move(r));
  }
  return out;
}

void Store::save_findings(std::span<const VulnerabilityFinding> findings) {
  sqlite3* db = impl_->db;
  Transaction tx(db);
  exec(db, "DELETE FROM program_cves");
  Statement ins(db, "INSERT OR IGNORE INTO program_cves(record_id, cpe23, cve_id) VALUES (?,?,?)");
  for (const auto& f : findings) {
    for (const auto& c : f.cves) {
      ins.bind(1, static_cast<std::int64_t>(f.software.record_id)).bind(2, f.cpe_string).bind(3, c.cve_id);
      ins.run();
    }
  }
  tx.commit();
}

std::vector<VulnerabilityFinding> Store::load_findings(const Catalog& catalog) const {
  std::map<RecordId, SoftwareRecord> programs;
  for (auto& r : load_results()) programs.emplace(r.software.record_id, std::move(r.software));

  Statement q(impl_->db, "SELECT record_id, cpe23, cve_id FROM program_cves ORDER BY record_id");
  std::map<RecordId, VulnerabilityFinding> grouped;
  while (q.step()) {
    const auto id = static_cast<RecordId>(q.int64(0));
    const CveRecord* cve = catalog.find_cve(q.text(2));
    const auto program = programs.find(id);
    if (cve == nullptr || program == programs.end()) continue;
    auto& finding = grouped[id];
    finding.software = program->second;
    finding.cpe_string = q.text(1);
    finding.cves.push_back({cve->cve_id, cve->severity, cve->cvss_score, cve->description});
  }
  std::vector<VulnerabilityFinding> out;
  for (auto& [_, f] : grouped) {
    std::sort(f.cves.begin(), f.cves.end(), [](const CveSummary& a, const CveSummary& b) {
      if (a.cvss_score.has_value() != b.cvss_score.has_value()) return a.cvss_score.has_value();
      if (a.cvss_score && *a.cvss_score != *b.cvss_score) return *a.cvss_score > *b.cvss_score;
      return a.cve_id < b.cve_id;
    });
    out.push_back(std::move(f));
  }
  return out;
}

void Store::compact() { exec(impl_->db, "VACUUM"); }

void Store::rebuild_index() {
  sqlite3* db = impl_->db;
  Transaction tx(db);
  std::vector<std::tuple<std::string, std::string, std::string>> updates;
  {
    Statement q(db, "SELECT cpe23, title FROM cpe");
    while (q.step()) {
      const auto name = parse_cpe23(q.text(0));
      updates.emplace_back(q.text(0), derive_title_norm(q.text(1), name.version),
                           derive_product_norm(name.product));
    }
  }
  Statement up(db, "UPDATE cpe SET title_norm = ?, product_norm = ? WHERE cpe23 = ?");
  for (const auto& [cpe, title_norm, product_norm] : updates) {
    up.bind(1, title_norm).bind(2, product_norm).bind(3, cpe).run();
  }
  exec(db, "REINDEX");
  tx.commit();
}

}  // namespace cpesleuth
