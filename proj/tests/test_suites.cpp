// Campaign layer tests: registry shape, record schema, seeded determinism,
// config precedence, report round-trips, CLI exit codes, and the cross-check
// that every anchor a suite can emit is documented in the identity table.
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wb/errors.hpp"
#include "wb/suites.hpp"

using namespace wb;

namespace {

const CheckRecord* find_record(const std::vector<CheckRecord>& recs,
                               const std::string& id) {
  for (const CheckRecord& r : recs)
    if (r.check_id == id) return &r;
  return nullptr;
}

std::string temp_file(const std::string& stem, const std::string& content) {
  const std::string path =
      (std::filesystem::temp_directory_path() / stem).string();
  std::ofstream out(path);
  out << content;
  return path;
}

SuiteConfig fast_config() {
  SuiteConfig cfg;
  cfg.seed = 20260821;
  cfg.dims_lo = 2;
  cfg.dims_hi = 3;
  cfg.modes = 1;
  cfg.samples = 4;
  return cfg;
}

}  // namespace

TEST_CASE("registry: eight canonical suites, each documented and anchored") {
  const auto& reg = suite_registry();
  REQUIRE(reg.size() == 8);
  const std::vector<std::string> expected = {
      "property_ii",     "standard_subspace", "tomita_finite",
      "quasifree",       "twist",             "identity_chains",
      "spin_statistics", "wedge_geometry"};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(reg[i].name == expected[i]);
    CHECK(!reg[i].description.empty());
    CHECK(!reg[i].anchors.empty());
    CHECK(reg[i].default_tol >= 0.0);
  }
  CHECK(reg[4].default_tol == 1e-12);   // twist: exact algebra, tighter tol
  CHECK(reg[6].default_tol == 0.0);     // spin_statistics: integer identities
  CHECK(reg[5].default_tol == 1e-10);   // identity_chains
}

TEST_CASE("suite names: hyphens canonicalize to underscores") {
  CHECK(canonical_suite_name("spin-statistics") == "spin_statistics");
  CHECK(canonical_suite_name("property_ii") == "property_ii");
  CHECK(is_suite_name("identity-chains"));
  CHECK(is_suite_name("identity_chains"));
  CHECK(!is_suite_name("identity chains"));
  CHECK(!is_suite_name("nosuch"));
}

TEST_CASE("tolerance precedence: cli > per-suite > config-file > default") {
  SuiteConfig cfg;
  CHECK(cfg.tol_for("twist") == 1e-12);
  cfg.tol_cfg = 1e-6;
  CHECK(cfg.tol_for("twist") == 1e-6);
  cfg.suite_tol["twist"] = 1e-7;
  CHECK(cfg.tol_for("twist") == 1e-7);
  CHECK(cfg.tol_for("quasifree") == 1e-6);  // per-suite entry only for twist
  cfg.tol_cli = 1e-3;
  CHECK(cfg.tol_for("twist") == 1e-3);
  CHECK(cfg.tol_for("spin-statistics") == 1e-3);
}

TEST_CASE("record schema: suite field, non-empty ids, pass <=> residual <= tol") {
  SuiteConfig cfg = fast_config();
  for (const std::string name : {"property_ii", "spin_statistics", "twist"}) {
    const std::vector<CheckRecord> recs = run_suite(name, cfg);
    REQUIRE(!recs.empty());
    std::set<std::string> ids;
    const auto& reg = suite_registry();
    const auto info = std::find_if(reg.begin(), reg.end(),
                                   [&](const SuiteInfo& s) { return s.name == name; });
    REQUIRE(info != reg.end());
    for (const CheckRecord& r : recs) {
      CHECK(r.suite == name);
      CHECK(!r.check_id.empty());
      CHECK(!r.paper_anchor.empty());
      CHECK(r.pass == (r.residual <= r.tol));
      CHECK(r.tol == cfg.tol_for(name));
      CHECK(r.wall_time_ms >= 0.0);
      CHECK(std::find(info->anchors.begin(), info->anchors.end(),
                      r.paper_anchor) != info->anchors.end());
      ids.insert(r.check_id);
    }
    CHECK(ids.size() == recs.size());  // check ids are unique within a suite
  }
}

TEST_CASE("determinism: identical config reproduces every field but the clock") {
  SuiteConfig cfg = fast_config();
  cfg.suites = {"spin_statistics", "wedge_geometry", "quasifree"};
  const std::vector<CheckRecord> a = run_selected(cfg);
  const std::vector<CheckRecord> b = run_selected(cfg);
  REQUIRE(a.size() == b.size());
  REQUIRE(!a.empty());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].suite == b[i].suite);
    CHECK(a[i].check_id == b[i].check_id);
    CHECK(a[i].paper_anchor == b[i].paper_anchor);
    CHECK(a[i].parameters == b[i].parameters);
    CHECK(a[i].residual == b[i].residual);  // bitwise: same seeded stream
    CHECK(a[i].tol == b[i].tol);
    CHECK(a[i].pass == b[i].pass);
  }
}

TEST_CASE("selection: empty and 'all' run every suite, in registry order") {
  SuiteConfig cfg = fast_config();
  cfg.suites = {"twist", "property_ii"};  // out of registry order on purpose
  const std::vector<CheckRecord> two = run_selected(cfg);
  CHECK(two.front().suite == "property_ii");  // registry order wins
  CHECK(two.back().suite == "twist");
  cfg.suites = {"all"};
  std::set<std::string> seen;
  for (const CheckRecord& r : run_selected(cfg)) seen.insert(r.suite);
  CHECK(seen.size() == 8);
  cfg.suites.clear();
  seen.clear();
  for (const CheckRecord& r : run_selected(cfg)) seen.insert(r.suite);
  CHECK(seen.size() == 8);
}

TEST_CASE("a crashing suite becomes one failed record, not an aborted run") {
  SuiteConfig cfg = fast_config();
  cfg.modes = 9;  // beyond the quasi-free oracle cap: the suite throws
  cfg.suites = {"quasifree", "spin_statistics"};
  const std::vector<CheckRecord> recs = run_selected(cfg);
  const CheckRecord* boom = find_record(recs, "suite-exception");
  REQUIRE(boom != nullptr);
  CHECK(boom->suite == "quasifree");
  CHECK(!boom->pass);
  CHECK(boom->residual > 1e100);
  bool saw_spin = false;
  for (const CheckRecord& r : recs) saw_spin |= r.suite == "spin_statistics";
  CHECK(saw_spin);  // the campaign continued past the crash
}

TEST_CASE("config file: keys land in the right fields, flags stay untouched") {
  SuiteConfig cfg;
  const std::string path = temp_file(
      "wb_cfg_ok.txt",
      "# campaign\n"
      "suite = twist, spin-statistics\n"
      "seed = 99\n"
      "tol = 1e-6\n"
      "tol.identity-chains = 1e-9\n"
      "dims = 3..5\n"
      "modes = 2\n"
      "samples = 12\n"
      "out = r.json\n"
      "format = csv\n");
  apply_config_file(cfg, path);
  std::remove(path.c_str());
  CHECK(cfg.suites == std::vector<std::string>({"twist", "spin_statistics"}));
  CHECK(cfg.seed == 99);
  REQUIRE(cfg.tol_cfg.has_value());
  CHECK(*cfg.tol_cfg == 1e-6);
  CHECK(cfg.suite_tol.at("identity_chains") == 1e-9);
  CHECK(cfg.dims_lo == 3);
  CHECK(cfg.dims_hi == 5);
  CHECK(cfg.modes == 2);
  CHECK(cfg.samples == 12);
  CHECK(cfg.out_path == "r.json");
  CHECK(cfg.format == "csv");
  validate_config(cfg);  // the parsed config is coherent
}

TEST_CASE("config errors: unknown keys, bad values, bad names, missing file") {
  SuiteConfig cfg;
  try {
    apply_config_file(cfg, "/nonexistent/wb.cfg");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
  }
  for (const char* line :
       {"bogus = 1", "seed = banana", "tol = fast", "tol.nosuch = 1e-6",
        "dims = a..b", "just a line"}) {
    const std::string path = temp_file("wb_cfg_bad.txt", line);
    try {
      SuiteConfig fresh;
      apply_config_file(fresh, path);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConfigError);
    }
    std::remove(path.c_str());
  }
  SuiteConfig bad = fast_config();
  bad.suites = {"nosuch"};
  try {
    validate_config(bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
  }
  for (auto mutate : {+[](SuiteConfig& c) { c.dims_lo = 1; },
                      +[](SuiteConfig& c) { c.dims_hi = 13; },
                      +[](SuiteConfig& c) { c.dims_lo = 6, c.dims_hi = 4; },
                      +[](SuiteConfig& c) { c.modes = 0; },
                      +[](SuiteConfig& c) { c.modes = 5; },
                      +[](SuiteConfig& c) { c.samples = -1; },
                      +[](SuiteConfig& c) { c.format = "xml"; }}) {
    SuiteConfig c = fast_config();
    mutate(c);
    try {
      validate_config(c);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConfigError);
    }
  }
}

TEST_CASE("csv report: escaping round-trips every field bit-for-bit") {
  std::vector<CheckRecord> recs;
  recs.push_back({"twist", "z-algebra/n=3", "Eq. (2.1)", "n=3", 1.25e-14,
                  1e-12, true, 0.125});
  recs.push_back({"identity_chains", "label, with comma", "Cor 2.7",
                  "quoted \"param\" and, commas", 0.3333333333333333, 1e-10,
                  false, 2.5});
  recs.push_back({"wedge_geometry", "line\nbreak", "Eq. (2.8)", "", 0.0, 0.0,
                  true, 0.0});
  const std::string csv = report_csv(recs);
  const std::vector<CheckRecord> back = parse_csv(csv);
  REQUIRE(back.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(back[i].suite == recs[i].suite);
    CHECK(back[i].check_id == recs[i].check_id);
    CHECK(back[i].paper_anchor == recs[i].paper_anchor);
    CHECK(back[i].parameters == recs[i].parameters);
    CHECK(back[i].residual == recs[i].residual);
    CHECK(back[i].tol == recs[i].tol);
    CHECK(back[i].pass == recs[i].pass);
    CHECK(back[i].wall_time_ms == recs[i].wall_time_ms);
  }

  // And for an actual campaign's records.
  SuiteConfig cfg = fast_config();
  const std::vector<CheckRecord> real = run_suite("spin_statistics", cfg);
  const std::vector<CheckRecord> rback = parse_csv(report_csv(real));
  REQUIRE(rback.size() == real.size());
  for (std::size_t i = 0; i < real.size(); ++i) {
    CHECK(rback[i].check_id == real[i].check_id);
    CHECK(rback[i].residual == real[i].residual);
    CHECK(rback[i].wall_time_ms == real[i].wall_time_ms);
  }
}

TEST_CASE("json report: meta/records/summary shape with exact counts") {
  SuiteConfig cfg = fast_config();
  cfg.suites = {"spin_statistics"};
  const std::vector<CheckRecord> recs = run_selected(cfg);
  const std::string text = report_json(recs, cfg, "2026-01-01T00:00:00Z");
  const nlohmann::json doc = nlohmann::json::parse(text);
  CHECK(doc.at("meta").at("seed").get<std::uint64_t>() == cfg.seed);
  CHECK(doc.at("meta").at("version").get<std::string>() == "1.0.0");
  CHECK(doc.at("meta").at("started_at").get<std::string>() ==
        "2026-01-01T00:00:00Z");
  REQUIRE(doc.at("records").size() == recs.size());
  const auto& first = doc.at("records").at(0);
  CHECK(first.at("suite") == "spin_statistics");
  CHECK(first.at("check_id") == recs.front().check_id);
  CHECK(first.at("paper_anchor") == recs.front().paper_anchor);
  CHECK(first.at("residual").get<double>() == recs.front().residual);
  CHECK(first.at("pass").is_boolean());
  int passed = 0;
  for (const CheckRecord& r : recs) passed += r.pass ? 1 : 0;
  CHECK(doc.at("summary").at("total").get<int>() ==
        static_cast<int>(recs.size()));
  CHECK(doc.at("summary").at("passed").get<int>() == passed);
  CHECK(doc.at("summary").at("failed").get<int>() ==
        static_cast<int>(recs.size()) - passed);
}

TEST_CASE("timestamps are UTC ISO-8601 with second resolution") {
  const std::string ts = current_timestamp_utc();
  REQUIRE(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[7] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts[13] == ':');
  CHECK(ts[16] == ':');
  CHECK(ts[19] == 'Z');
}

TEST_CASE("cli: list names every suite; bad config exits 2 with no output") {
  {
    std::ostringstream out, err;
    CHECK(run_cli({"list"}, out, err) == 0);
    for (const SuiteInfo& info : suite_registry())
      CHECK(out.str().find(info.name) != std::string::npos);
  }
  {
    std::ostringstream out, err;
    CHECK(run_cli({"run", "--suite", "nosuch"}, out, err) == 2);
    CHECK(out.str().empty());  // nothing partial on a config error
    CHECK(err.str().find("ConfigError") != std::string::npos);
  }
  {
    std::ostringstream out, err;
    CHECK(run_cli({"run", "--dims", "1..20"}, out, err) == 2);
    CHECK(out.str().empty());
  }
  {
    std::ostringstream out, err;
    CHECK(run_cli({"--help"}, out, err) == 0);
    CHECK(out.str().find("verify") != std::string::npos);
  }
  {
    std::ostringstream out, err;
    CHECK(run_cli({}, out, err) == 2);  // a subcommand is required
  }
}

TEST_CASE("cli: a fast run emits the chosen format and exit code 0") {
  {
    std::ostringstream out, err;
    const int rc = run_cli({"run", "--suite", "spin_statistics", "--seed",
                            "20260821", "--format", "csv"},
                           out, err);
    CHECK(rc == 0);
    CHECK(out.str().rfind("suite,check_id,paper_anchor,parameters,residual,"
                          "tol,pass,wall_time_ms\n", 0) == 0);
    const std::vector<CheckRecord> recs = parse_csv(out.str());
    CHECK(!recs.empty());
    for (const CheckRecord& r : recs) CHECK(r.pass);
  }
  {
    std::ostringstream out, err;
    const int rc =
        run_cli({"run", "--suite", "property-ii", "--dims", "2..3", "--seed",
                 "7", "--out", "/tmp/wb_cli_out.json"},
                out, err);
    CHECK(rc == 0);
    CHECK(out.str().empty());  // report went to the file
    std::ifstream in("/tmp/wb_cli_out.json");
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    const nlohmann::json doc = nlohmann::json::parse(buf.str());
    CHECK(doc.at("summary").at("failed").get<int>() == 0);
    std::remove("/tmp/wb_cli_out.json");
  }
}

TEST_CASE("every anchor a suite can emit appears in the identity table") {
  std::ifstream in(WB_IDENTITY_DOC);
  REQUIRE_MESSAGE(in.good(), "identity table missing: " WB_IDENTITY_DOC);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string doc = buf.str();
  for (const SuiteInfo& info : suite_registry()) {
    for (const std::string& anchor : info.anchors) {
      INFO(info.name << " -> " << anchor);
      CHECK(doc.find("`" + anchor + "`") != std::string::npos);
    }
  }
  // And the suites never emit an anchor outside their registered list (which
  // the schema test pins per-suite); a full campaign obeys it too.
  SuiteConfig cfg = fast_config();
  for (const CheckRecord& r : run_selected(cfg)) {
    INFO(r.suite << " / " << r.check_id);
    CHECK(doc.find("`" + r.paper_anchor + "`") != std::string::npos);
  }
}
