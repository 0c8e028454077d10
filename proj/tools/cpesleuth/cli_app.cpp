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

#include "cli_app.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "cpesleuth/comparison.hpp"
#include "cpesleuth/cve_mapper.hpp"
#include "cpesleuth/ingest.hpp"
#include "cpesleuth/matcher.hpp"
#include "cpesleuth/report.hpp"
#include "cpesleuth/sanitizer.hpp"

namespace cpesleuth::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::optional<std::string> catalog;
  std::array<std::optional<std::string>, kTierCount> thresholds;
  bool include_deprecated = false;
  std::optional<std::string> rules;
  unsigned threads = 1;

  // ingest
  std::string kind;
  std::string input;
  std::string input_format;
  // match / scan
  std::optional<std::string> inventory;
  std::string inventory_format = "auto";
  bool explain = false;
  // bench / report / scan
  std::string fixtures;
  std::string report_format = "table";
  std::optional<std::string> out_path;
  bool no_timestamp = false;
};

// Everything a subcommand needs, resolved from the global options.
struct Context {
  const Options& opt;
  std::ostream& out;
  std::ostream& err;
  EnvLookup env;

  MatchConfig config() const {
    MatchConfig c;
    for (std::size_t i = 0; i < opt.thresholds.size(); ++i) {
      if (opt.thresholds[i]) c.thresholds[i] = Rational::parse(*opt.thresholds[i]);
    }
    c.include_deprecated = opt.include_deprecated;
    c.validate();
    return c;
  }
  SanitizerRules rules() const {
    return opt.rules ? SanitizerRules::load(*opt.rules) : SanitizerRules::defaults();
  }
  fs::path catalog_dir() const {
    std::optional<fs::path> flag;
    if (opt.catalog) flag = *opt.catalog;
    return resolve_catalog_dir(flag, env);
  }
  fs::path db_path() const { return catalog_dir() / kCatalogFileName; }
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_output(const Context& ctx, const std::string& bytes) {
  if (!ctx.opt.out_path) {
    ctx.out << bytes;
    return;
  }
  std::ofstream file(*ctx.opt.out_path, std::ios::binary | std::ios::trunc);
  if (!file || !file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
    throw Error(ErrorCode::Io, "cannot write " + *ctx.opt.out_path);
  }
}

std::string emit(const Context& ctx, const std::optional<DetectionReport>& report,
                 std::span<const VulnerabilityFinding> findings) {
  ReportOptions options;
  if (!ctx.opt.no_timestamp) options.timestamp = utc_timestamp();
  return emit_report(report, findings, parse_report_format(ctx.opt.report_format), options);
}

SourceFormat inventory_format(const std::string& flag, const fs::path& path) {
  if (flag != "auto") return parse_source_format(flag);
  return path.extension() == ".jsonl" ? SourceFormat::Jsonl : SourceFormat::OsqueryJson;
}

void import_inventory(const Context& ctx, Catalog& catalog) {
  if (!ctx.opt.inventory) return;
  const fs::path path = *ctx.opt.inventory;
  auto load = load_inventory({SourceKind::Inventory, inventory_format(ctx.opt.inventory_format, path), path});
  if (load.skipped > 0) ctx.err << "warning: skipped " << load.skipped << " inventory rows without a name\n";
  catalog.set_inventory(std::move(load.records));
}

std::string describe(const SoftwareRecord& r) {
  std::string s = "#" + std::to_string(r.record_id) + " " + r.raw_name;
  if (!r.raw_version.empty()) s += " " + r.raw_version;
  return s;
}

void print_match(std::ostream& out, const MatchResult& r, bool explain) {
  out << describe(r.software) << " -> ";
  if (r.matched) {
    out << r.matched->cpe_string << " (score " << r.matched->score.to_fixed(2) << ", weight "
        << r.matched->weight.value() << ")\n";
  } else if (r.error) {
    out << "error: " << *r.error << "\n";
  } else {
    out << "no match\n";
  }
  if (!explain) return;
  if (r.sanitized) {
    out << "  sanitized: name=\"" << r.sanitized->name << "\" vendor=\"" << r.sanitized->vendor
        << "\" version=\"" << r.sanitized->version << "\"\n";
  }
  if (r.trace.empty()) out << "  candidates: none\n";
  for (const auto& t : r.trace) {
    out << "  candidate w" << t.weight.value() << " score " << t.score.to_fixed(2)
        << (t.passed_threshold ? " pass " : " below-threshold ") << t.cpe_string
        << (t.deprecated ? " [deprecated]" : "") << "\n";
  }
}

int cmd_ingest(const Context& ctx) {
  const fs::path input = ctx.opt.input;
  const auto dir = ctx.catalog_dir();
  CatalogLock lock(dir);
  Store store(dir / kCatalogFileName);
  Catalog catalog = store.load_catalog();

  const SourceDescriptor src{parse_source_kind(ctx.opt.kind), parse_source_format(ctx.opt.input_format),
                             input};
  src.validate();
  switch (src.kind) {
    case SourceKind::CpeDictionary: {
      const auto before = catalog.cpe_entries().size();
      const auto read = load_cpe_dictionary(src, catalog);
      ctx.out << "cpe: read " << read << " entries, " << catalog.cpe_entries().size() - before
              << " new, " << catalog.cpe_entries().size() << " total\n";
      break;
    }
    case SourceKind::CveFeed: {
      const auto read = load_cves(src, catalog);
      ctx.out << "cve: read " << read << " records, " << catalog.cve_records().size() << " total\n";
      break;
    }
    case SourceKind::Inventory: {
      auto load = load_inventory(src);
      ctx.out << "inventory: " << load.records.size() << " records";
      if (load.skipped > 0) ctx.out << " (" << load.skipped << " skipped)";
      ctx.out << "\n";
      catalog.set_inventory(std::move(load.records));
      break;
    }
  }
  store.save_catalog(catalog);
  return kOk;
}

int cmd_match(const Context& ctx) {
  const auto config = ctx.config();
  const auto rules = ctx.rules();
  const auto dir = ctx.catalog_dir();
  CatalogLock lock(dir);
  Store store(dir / kCatalogFileName);
  Catalog catalog = store.load_catalog();
  import_inventory(ctx, catalog);
  if (ctx.opt.inventory) store.save_catalog(catalog);

  const auto results = match_inventory(catalog.inventory(), catalog, rules, config, ctx.opt.threads);
  store.save_results(results);
  std::size_t matched = 0;
  for (const auto& r : results) {
    print_match(ctx.out, r, ctx.opt.explain);
    if (r.matched) ++matched;
  }
  ctx.out << matched << " of " << results.size() << " records matched\n";
  return kOk;
}

int cmd_map(const Context& ctx) {
  const auto dir = ctx.catalog_dir();
  CatalogLock lock(dir);
  Store store(dir / kCatalogFileName);
  const Catalog catalog = store.load_catalog();
  const auto results = store.load_results();
  const auto findings = build_findings(results, catalog);
  store.save_findings(findings);
  for (const auto& f : findings) {
    ctx.out << describe(f.software) << " -> " << f.cpe_string << ":";
    for (const auto& c : f.cves) ctx.out << " " << c.cve_id;
    ctx.out << "\n";
  }
  ctx.out << findings.size() << " vulnerable programs\n";
  return kOk;
}

int cmd_scan(const Context& ctx) {
  const auto config = ctx.config();
  const auto rules = ctx.rules();
  parse_report_format(ctx.opt.report_format);  // fail before doing any work
  const auto dir = ctx.catalog_dir();
  CatalogLock lock(dir);
  Store store(dir / kCatalogFileName);
  Catalog catalog = store.load_catalog();
  import_inventory(ctx, catalog);
  if (ctx.opt.inventory) store.save_catalog(catalog);

  const auto results = match_inventory(catalog.inventory(), catalog, rules, config, ctx.opt.threads);
  const auto findings = build_findings(results, catalog);
  store.save_results(results);
  store.save_findings(findings);
  write_output(ctx, emit(ctx, summarize_enhanced(catalog.inventory(), findings), findings));
  return kOk;
}

int cmd_report(const Context& ctx) {
  parse_report_format(ctx.opt.report_format);
  Store store(ctx.db_path());
  const Catalog catalog = store.load_catalog();
  const auto findings = store.load_findings(catalog);
  std::vector<SoftwareRecord> programs;
  for (auto& r : store.load_results()) programs.push_back(std::move(r.software));
  write_output(ctx, emit(ctx, summarize_enhanced(programs, findings), findings));
  return kOk;
}

int cmd_bench(const Context& ctx) {
  const auto config = ctx.config();
  const auto rules = ctx.rules();
  parse_report_format(ctx.opt.report_format);
  const fs::path dir = ctx.opt.fixtures;
  Catalog catalog;
  load_cpe_dictionary({SourceKind::CpeDictionary, SourceFormat::Jsonl, dir / "cpe.jsonl"}, catalog);
  load_cves({SourceKind::CveFeed, SourceFormat::Jsonl, dir / "cves.jsonl"}, catalog);
  auto inventory = load_inventory({SourceKind::Inventory, SourceFormat::OsqueryJson, dir / "inventory.json"});
  catalog.set_inventory(std::move(inventory.records));

  const auto run = run_comparison(catalog.inventory(), catalog, rules, config);
  write_output(ctx, emit(ctx, run.report, run.findings));
  return kOk;
}

int cmd_compact(const Context& ctx) {
  const auto dir = ctx.catalog_dir();
  CatalogLock lock(dir);
  Store(dir / kCatalogFileName).compact();
  ctx.out << "compacted " << (dir / kCatalogFileName).string() << "\n";
  return kOk;
}

int cmd_rebuild_index(const Context& ctx) {
  const auto dir = ctx.catalog_dir();
  CatalogLock lock(dir);
  Store(dir / kCatalogFileName).rebuild_index();
  ctx.out << "rebuilt indexes of " << (dir / kCatalogFileName).string() << "\n";
  return kOk;
}

void add_report_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.report_format, "json, csv or table")
      ->capture_default_str()
      ->check([](const std::string& v) {
        try {
          parse_report_format(v);
          return std::string();
        } catch (const Error& e) {
          return std::string(e.what());
        }
      });
  cmd->add_option("--out", opt.out_path, "write the report to a file instead of stdout");
  cmd->add_flag("--no-timestamp", opt.no_timestamp, "omit generated_at from JSON output");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env) {
  Options opt;
  CLI::App app{"Map installed software to CPE identifiers and known CVEs", "cpesleuth"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  app.add_option("--catalog", opt.catalog, "catalog directory (default: $CPESLEUTH_DATA)");
  for (int w = 1; w <= kTierCount; ++w) {
    app.add_option("--threshold-w" + std::to_string(w), opt.thresholds[static_cast<std::size_t>(w - 1)],
                   "minimum similarity for tier " + std::to_string(w) + " candidates");
  }
  app.add_flag("--include-deprecated", opt.include_deprecated, "allow deprecated dictionary entries");
  app.add_option("--rules", opt.rules, "sanitizer rules file")->check(CLI::ExistingFile);
  app.add_option("--threads", opt.threads, "matching threads (0 = all cores)")->capture_default_str();

  auto* ingest = app.add_subcommand("ingest", "load a CPE dictionary, CVE feed or inventory");
  ingest->add_option("kind", opt.kind, "cpe, cve or inventory")
      ->required()
      ->check(CLI::IsMember({"cpe", "cve", "inventory"}));
  ingest->add_option("--input", opt.input, "source file")->required()->check(CLI::ExistingFile);
  ingest->add_option("--format", opt.input_format, "official_xml, nvd_json, jsonl or osquery_json")
      ->required();

  auto* match = app.add_subcommand("match", "match the inventory against the dictionary");
  match->add_option("--inventory", opt.inventory, "replace the stored inventory first")
      ->check(CLI::ExistingFile);
  match->add_option("--inventory-format", opt.inventory_format, "auto, osquery_json or jsonl")
      ->capture_default_str();
  match->add_flag("--explain", opt.explain, "print sanitized fields and every scored candidate");

  app.add_subcommand("map", "map stored matches to applicable CVEs");

  auto* scan = app.add_subcommand("scan", "match, map and report in one pass");
  scan->add_option("--inventory", opt.inventory, "replace the stored inventory first")
      ->check(CLI::ExistingFile);
  scan->add_option("--inventory-format", opt.inventory_format, "auto, osquery_json or jsonl")
      ->capture_default_str();
  add_report_options(scan, opt);

  auto* bench = app.add_subcommand("bench", "compare baseline and enhanced detection on a fixture dir");
  bench->add_option("--fixtures", opt.fixtures, "directory with cpe.jsonl, cves.jsonl, inventory.json")
      ->required()
      ->check(CLI::ExistingDirectory);
  add_report_options(bench, opt);

  auto* report = app.add_subcommand("report", "render stored findings");
  add_report_options(report, opt);

  app.add_subcommand("compact", "vacuum the catalog database");
  app.add_subcommand("rebuild-index", "re-derive lookup keys and rebuild database indexes");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const Context ctx{opt, out, err, env};
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "ingest") return cmd_ingest(ctx);
    if (name == "match") return cmd_match(ctx);
    if (name == "map") return cmd_map(ctx);
    if (name == "scan") return cmd_scan(ctx);
    if (name == "bench") return cmd_bench(ctx);
    if (name == "report") return cmd_report(ctx);
    if (name == "compact") return cmd_compact(ctx);
    if (name == "rebuild-index") return cmd_rebuild_index(ctx);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidArgument ? kUsage : kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kUsage;
}

}  // namespace cpesleuth::cli
