// Acceptance gate.  Drives the verify binary (path in argv[1]) through the
// eight acceptance criteria and prints one [PASS]/[FAIL] line per criterion.
// Tolerances and runtime budgets are pinned here, independent of the suite
// defaults: residuals are re-judged against the pinned tolerance rather than
// trusting the pass flags in the reports.
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

using nlohmann::json;

std::string g_verify;
std::filesystem::path g_tmp;

struct RunResult {
  int exit_code = -1;
  double seconds = 0.0;
  json report;  // null when the report could not be read
};

RunResult run_verify(const std::string& args, const std::string& tag) {
  const std::filesystem::path out_path = g_tmp / (tag + ".json");
  const std::filesystem::path err_path = g_tmp / (tag + ".err");
  const std::string cmd = "\"" + g_verify + "\" run " + args + " --out \"" +
                          out_path.string() + "\" 2>\"" + err_path.string() +
                          "\"";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const auto t1 = std::chrono::steady_clock::now();
  RunResult res;
  res.seconds = std::chrono::duration<double>(t1 - t0).count();
  res.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status)
                                                     : -1;
  std::ifstream in(out_path);
  if (in.good()) {
    try {
      in >> res.report;
    } catch (...) {
      res.report = nullptr;
    }
  }
  return res;
}

// All records of the single-suite report; empty when the report is malformed.
std::vector<json> records_of(const RunResult& r) {
  std::vector<json> out;
  if (!r.report.is_object() || !r.report.contains("records")) return out;
  for (const json& rec : r.report["records"]) out.push_back(rec);
  return out;
}

int g_failures = 0;

void verdict(int idx, bool pass, const std::string& what,
             const std::string& detail) {
  std::printf("[%s] %d. %s — %s\n", pass ? "PASS" : "FAIL", idx, what.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

// Residuals re-judged against the pinned tolerance; returns the worst one.
bool all_within(const std::vector<json>& recs, double tol, double& worst) {
  worst = 0.0;
  bool ok = !recs.empty();
  for (const json& rec : recs) {
    const double res = rec["residual"].get<double>();
    worst = std::max(worst, res);
    if (!(res <= tol)) ok = false;
  }
  return ok;
}

std::string masked(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("\"started_at\"") != std::string::npos) continue;
    if (line.find("\"wall_time_ms\"") != std::string::npos) continue;
    out << line << "\n";
  }
  return out.str();
}

char buf[512];

std::string fmt(const char* f, double a, double b) {
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// 1. sl2 property (ii) over m = 2..8 and the 6-point t grid.
void criterion1() {
  const double tol = 1e-8, budget = 1.0;
  const RunResult r = run_verify("--suite property_ii --dims 2..8 --seed 42",
                                 "c1");
  const std::vector<json> recs = records_of(r);
  std::set<std::string> grid;
  for (const json& rec : recs) {
    const std::string id = rec["check_id"].get<std::string>();
    if (id.rfind("commutation/", 0) == 0) grid.insert(id);
  }
  double worst = 0.0;
  const bool ok = r.exit_code == 0 && all_within(recs, tol, worst) &&
                  grid.size() == 7 * 6 && r.seconds < budget;
  verdict(1, ok, "e^{K/2} e^{itH} e^{-K/2} = e^{-itH}, m = 2..8, 6-point t grid",
          fmt("worst residual %.2e (tol 1e-8), %.2f s", worst, r.seconds) +
              ", grid points " + std::to_string(grid.size()) + "/42");
}

// 2. standard-subspace modular laws over >= 50 seeded subspaces.
void criterion2() {
  const double tol = 1e-8, budget = 2.0;
  const RunResult r = run_verify("--suite standard_subspace --seed 42", "c2");
  const std::vector<json> recs = records_of(r);
  std::set<std::string> subspaces;
  std::set<std::string> laws;
  for (const json& rec : recs) {
    const std::string id = rec["check_id"].get<std::string>();
    const auto slash = id.find('/');
    if (slash != std::string::npos) {
      laws.insert(id.substr(0, slash));
      subspaces.insert(id.substr(slash + 1));
    }
  }
  const bool law_cover = laws.count("j-squared") && laws.count("jdj-inverse") &&
                         laws.count("flow-preserves-k") &&
                         laws.count("jk-complement") &&
                         laws.count("complement-flow");
  double worst = 0.0;
  const bool ok = r.exit_code == 0 && all_within(recs, tol, worst) &&
                  subspaces.size() >= 50 && law_cover && r.seconds < budget;
  verdict(2, ok,
          "J^2 = 1, JDJ = D^{-1}, D^{it}K = K, JK = K', D_{K'} = D^{-1} over "
          "seeded subspaces",
          fmt("worst residual %.2e (tol 1e-8), %.2f s", worst, r.seconds) +
              ", subspaces " + std::to_string(subspaces.size()));
}

// 3. GNS brute force vs closed-form quasi-free spectrum, 1..4 modes.
void criterion3() {
  const double tol = 1e-8, budget = 10.0;
  const RunResult r = run_verify("--suite quasifree --modes 4 --seed 42", "c3");
  const std::vector<json> recs = records_of(r);
  std::set<std::string> spectra;
  for (const json& rec : recs) {
    const std::string id = rec["check_id"].get<std::string>();
    if (id.rfind("log-spectrum/", 0) == 0) spectra.insert(id);
  }
  double worst = 0.0;
  const bool ok = r.exit_code == 0 && all_within(recs, tol, worst) &&
                  spectra.size() == 4 && r.seconds < budget;
  verdict(3, ok, "log Delta spectrum: GNS brute force vs quasi-free formula, "
                 "1..4 modes",
          fmt("worst residual %.2e (tol 1e-8), %.2f s", worst, r.seconds));
}

// 4. twist calculus, exhaustive homogeneous monomials for n <= 4.
void criterion4() {
  const double tol = 1e-12, budget = 5.0;
  const RunResult r = run_verify("--suite twist --seed 42", "c4");
  const std::vector<json> recs = records_of(r);
  std::set<int> sizes;
  bool families = true;
  for (const char* fam : {"z-algebra", "conjugation-even", "conjugation-odd",
                          "reality-conjugation", "locality-twisted",
                          "locality-bridge"}) {
    bool seen = false;
    for (const json& rec : recs) {
      const std::string id = rec["check_id"].get<std::string>();
      if (id.rfind(fam, 0) == 0) {
        seen = true;
        const auto eq = id.rfind('=');
        sizes.insert(std::stoi(id.substr(eq + 1)));
      }
    }
    families = families && seen;
  }
  double worst = 0.0;
  const bool ok = r.exit_code == 0 && all_within(recs, tol, worst) &&
                  families && sizes.count(4) && sizes.count(1) &&
                  r.seconds < budget;
  verdict(4, ok, "Z B Z* = B, Z F Z* = i Gamma F, V Z V = Z*, twisted "
                 "locality, exhaustive n <= 4",
          fmt("worst residual %.2e (tol 1e-12), %.2f s", worst, r.seconds));
}

// 5. wedge-operator identity chains, two-path, both spins, 5-point t grid.
void criterion5() {
  const double tol = 1e-10, budget = 5.0;
  const RunResult r =
      run_verify("--suite identity_chains --samples 20 --seed 42", "c5");
  const std::vector<json> recs = records_of(r);
  std::set<std::string> tgrid;
  bool cor27 = false, refl_spin0 = false, refl_spinor = false,
       sampled = !recs.empty();
  for (const json& rec : recs) {
    const std::string id = rec["check_id"].get<std::string>();
    if (id.rfind("cor27", 0) == 0) cor27 = true;
    if (id.rfind("cor27-opposite-flow/t=", 0) == 0) {
      const auto cut = id.find('/', 22);
      tgrid.insert(id.substr(0, cut));
    }
    if (id.rfind("refl-cov", 0) == 0 && id.find("/s=0/") != std::string::npos)
      refl_spin0 = true;
    if (id.rfind("refl-cov", 0) == 0 &&
        id.find("/s=half/") != std::string::npos)
      refl_spinor = true;
    const std::string params = rec["parameters"].get<std::string>();
    if (params.find("wavefns=20; points=100") == std::string::npos)
      sampled = false;
  }
  double worst = 0.0;
  const bool ok = r.exit_code == 0 && all_within(recs, tol, worst) && cor27 &&
                  refl_spin0 && refl_spinor && tgrid.size() == 5 && sampled &&
                  r.seconds < budget;
  verdict(5, ok, "J_1 D_2^{it} J_1 = D_2^{-it} and ZJ_1 U(g) (ZJ_1)* = "
                 "U(alpha(g)), 20 x 100 two-path, spins 0 and 1/2",
          fmt("worst residual %.2e (tol 1e-10), %.2f s", worst, r.seconds) +
              ", t grid " + std::to_string(tgrid.size()) + "/5");
}

// 6. spin-statistics chain: exact integer signs, zero tolerance.
void criterion6() {
  const double budget = 1.0;
  const RunResult r = run_verify("--suite spin_statistics --seed 42", "c6");
  const std::vector<json> recs = records_of(r);
  bool exact = !recs.empty(), s0 = false, s_half = false, sectors = false;
  for (const json& rec : recs) {
    if (rec["residual"].get<double>() != 0.0) exact = false;
    const std::string id = rec["check_id"].get<std::string>();
    const std::string params = rec["parameters"].get<std::string>();
    if (id == "rotation-vs-braid/s=0" &&
        params.find("rotation_sign=1") != std::string::npos)
      s0 = true;
    if (id == "rotation-vs-braid/s=half" &&
        params.find("rotation_sign=-1") != std::string::npos)
      s_half = true;
    if (id.rfind("sector-phase/", 0) == 0) sectors = true;
  }
  const bool ok = r.exit_code == 0 && exact && s0 && s_half && sectors &&
                  r.seconds < budget;
  verdict(6, ok, "(Z J_1 Z J_2)^2 = +1 (s = 0) / -1 (s = 1/2), matching CAR "
                 "sector phases, exact",
          std::string("all residuals exactly zero: ") +
              (exact ? "yes" : "no") + fmt(", %.2f s", r.seconds, 0.0));
}

// 7. PCT region map at geometry level plus cone membership sampling.
void criterion7() {
  const double tol = 1e-8, budget = 2.0;
  const RunResult r = run_verify("--suite wedge_geometry --seed 42", "c7");
  const std::vector<json> recs = records_of(r);
  bool region_exact = false;
  std::set<std::string> cone_t;
  bool enough_samples = true;
  for (const json& rec : recs) {
    const std::string id = rec["check_id"].get<std::string>();
    if (id.rfind("pct-region-map/", 0) == 0) {
      region_exact = true;
      if (rec["residual"].get<double>() != 0.0) region_exact = false;
    }
    if (id.rfind("cone-membership/d=4/t=", 0) == 0) {
      cone_t.insert(id.substr(22));
      const std::string params = rec["parameters"].get<std::string>();
      const auto pos = params.find("samples=");
      if (pos == std::string::npos || std::stoi(params.substr(pos + 8)) < 1000)
        enough_samples = false;
    }
  }
  double worst = 0.0;
  const bool ok = r.exit_code == 0 && all_within(recs, tol, worst) &&
                  region_exact && cone_t.size() == 3 && enough_samples &&
                  r.seconds < budget;
  verdict(7, ok, "dual region maps onto dual region of -O wedge by wedge; "
                 "Lambda_2(t) C_t in W_1 on >= 1000 points, t in {0.1, 0.7, 2}",
          fmt("worst residual %.2e (tol 1e-8), %.2f s", worst, r.seconds));
}

// 8. byte-determinism of the full campaign (clock fields masked).
void criterion8() {
  const RunResult a = run_verify("--suite all --seed 20260821", "c8a");
  const RunResult b = run_verify("--suite all --seed 20260821", "c8b");
  const std::string ma = masked(g_tmp / "c8a.json");
  const std::string mb = masked(g_tmp / "c8b.json");
  const bool ok = a.exit_code == 0 && b.exit_code == 0 && !ma.empty() &&
                  ma == mb;
  verdict(8, ok, "verify run --suite all --seed S is byte-identical across "
                 "runs (timestamp and wall-time masked)",
          "masked report bytes " + std::to_string(ma.size()) +
              (ok ? ", identical" : ", DIFFER"));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-verify-binary>\n");
    return 2;
  }
  g_verify = argv[1];
  std::error_code ec;
  g_tmp = std::filesystem::temp_directory_path() /
          ("wb_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(g_tmp, ec);
  if (ec) {
    std::fprintf(stderr, "cannot create temp dir %s\n", g_tmp.string().c_str());
    return 2;
  }

  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();

  std::filesystem::remove_all(g_tmp, ec);
  std::printf("%d/8 criteria passed\n", 8 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
