// Named verification campaigns over the module layer: every check becomes a
// CheckRecord carrying its anchor into the identity table shipped in docs/,
// a residual, a tolerance, and a pass flag (pass <=> residual <= tol).  All
// randomness flows from a per-suite generator seeded by (master seed, suite
// name), so campaign results are byte-deterministic apart from the wall-time
// and timestamp fields.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wb {

struct CheckRecord {
  std::string suite;
  std::string check_id;
  std::string paper_anchor;
  std::string parameters;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  double wall_time_ms = 0.0;
};

struct SuiteInfo {
  std::string name;  // canonical (underscores)
  std::string description;
  std::vector<std::string> anchors;
  double default_tol = 0.0;
};

const std::vector<SuiteInfo>& suite_registry();
std::string canonical_suite_name(const std::string& name);  // '-' == '_'
bool is_suite_name(const std::string& name);

struct SuiteConfig {
  std::vector<std::string> suites;  // canonical names; empty means all
  std::uint64_t seed = 12345;
  std::optional<double> tol_cli;           // --tol: wins over everything
  std::optional<double> tol_cfg;           // config-file global tol
  std::map<std::string, double> suite_tol; // config-file tol.<suite> entries
  int dims_lo = 2;
  int dims_hi = 8;
  int modes = 4;
  int samples = 0;  // 0 = per-suite default
  std::string out_path;  // empty = stdout
  std::string format = "json";

  double tol_for(const std::string& suite) const;
};

// key=value lines, '#' comments; keys: suite, seed, tol, tol.<suite>, dims,
// modes, samples, out, format.  Throws ConfigError on unknown keys or
// unparsable values.  Only fills fields; precedence is handled by the caller
// (command-line flags win).
void apply_config_file(SuiteConfig& cfg, const std::string& path);

// Throws ConfigError on unknown suite names or out-of-range caps.
void validate_config(const SuiteConfig& cfg);

std::vector<CheckRecord> run_suite(const std::string& name,
                                   const SuiteConfig& cfg);
std::vector<CheckRecord> run_selected(const SuiteConfig& cfg);

std::string current_timestamp_utc();
std::string report_json(const std::vector<CheckRecord>& records,
                        const SuiteConfig& cfg, const std::string& started_at);
std::string report_csv(const std::vector<CheckRecord>& records);
std::vector<CheckRecord> parse_csv(const std::string& text);
void write_report_file(const std::string& path, const std::string& content);

// Full driver behind the `verify` binary: args exclude the program name.
// Returns the process exit code: 0 all checks pass, 1 failures present,
// 2 configuration error (nothing written in that case).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace wb
