#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qsc/run_config.hpp"

namespace {

std::string bin_path() {
  const char* p = std::getenv("QSC_BIN");
  REQUIRE_MESSAGE(p != nullptr, "QSC_BIN must point at the qsc binary");
  return p;
}

std::string config_dir() {
  const char* p = std::getenv("QSC_CONFIG_DIR");
  REQUIRE_MESSAGE(p != nullptr, "QSC_CONFIG_DIR must point at configs/");
  return p;
}

struct RunResult {
  int exit_code;
  std::string stderr_text;
};

RunResult run(const std::string& args) {
  const std::string err = std::string(std::tmpnam(nullptr)) + ".err";
  const int rc = std::system((bin_path() + " " + args + " 2>" + err).c_str());
  std::ifstream in(err);
  std::stringstream ss;
  ss << in.rdbuf();
  std::remove(err.c_str());
  return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (const char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("rate-sweep produces the documented CSV and is byte-deterministic") {
  const std::string out = std::string(std::tmpnam(nullptr)) + ".csv";
  const std::string cmd = "rate-sweep --config " + config_dir() +
                          "/fig_rate_ase.cfg --out " + out +
                          " --set sweep.L_min_km=49 --set sweep.L_max_km=51";
  CHECK(run(cmd).exit_code == 0);
  const std::string first = slurp(out);
  CHECK(first.rfind("L_km,kappa_S,N_S_opt,R_opt,Pr_e,I_AB_bps,chi_ub_bps,"
                    "delta_I_lb_bps,bits_per_mode\n", 0) == 0);
  CHECK(count_lines(first) == 4);  // header + 3 rows
  CHECK(first.find("\r") == std::string::npos);
  CHECK(run(cmd).exit_code == 0);
  CHECK(slurp(out) == first);
  std::remove(out.c_str());
}

TEST_CASE("unknown config keys are rejected by exact name") {
  const std::string out = std::string(std::tmpnam(nullptr)) + ".csv";
  const RunResult r = run("rate-sweep --config " + config_dir() +
                          "/fig_rate_ase.cfg --out " + out +
                          " --set link.Ns=0.2");
  CHECK(r.exit_code == 2);
  CHECK(r.stderr_text.find("link.Ns") != std::string::npos);
}

TEST_CASE("empty sweep is a config error") {
  const std::string out = std::string(std::tmpnam(nullptr)) + ".csv";
  const RunResult r = run("rate-sweep --config " + config_dir() +
                          "/fig_rate_ase.cfg --out " + out +
                          " --set sweep.L_min_km=10 --set sweep.L_max_km=5");
  CHECK(r.exit_code == 2);
  CHECK(r.stderr_text.find("empty sweep") != std::string::npos);
}

TEST_CASE("monitor-time emits the monitor columns with increasing T_M") {
  const std::string out = std::string(std::tmpnam(nullptr)) + ".csv";
  CHECK(run("monitor-time --config " + config_dir() + "/fig_monitor.cfg --out " +
            out + " --set sweep.L_step_km=20")
            .exit_code == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("L_km,S_A,S_B,C_AB,delta_f_at_1s,T_M_required,SNR_A_db,"
                   "SNR_B_db\n", 0) == 0);
  CHECK(count_lines(text) == 5);
  std::remove(out.c_str());
}

TEST_CASE("bounds table keeps the ordering and flags zero loss") {
  const std::string out = std::string(std::tmpnam(nullptr)) + ".csv";
  CHECK(run("bounds --config " + config_dir() + "/fig_bounds.cfg --out " + out +
            " --set bounds.loss_step_db=10")
            .exit_code == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "one_way_loss_db,kappa_S,tgw_bits_per_mode,cvqkd_bits_per_mode,"
        "protocol_bits_per_mode");
  bool first_row = true;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string field;
    std::vector<double> v;
    while (std::getline(ss, field, ',')) v.push_back(std::strtod(field.c_str(), nullptr));
    REQUIRE(v.size() == 5);
    CHECK(v[4] <= v[3]);
    CHECK(v[3] <= v[2]);
    if (first_row) {  // 0 dB: infinite bounds, finite protocol rate
      CHECK(std::isinf(v[2]));
      CHECK(std::isinf(v[3]));
      CHECK(std::isfinite(v[4]));
      first_row = false;
    }
  }
  CHECK_FALSE(first_row);
  std::remove(out.c_str());
}

TEST_CASE("mc-verify rejects zero trials and is report-deterministic") {
  const std::string out = std::string(std::tmpnam(nullptr)) + ".csv";
  const RunResult bad = run("mc-verify --config " + config_dir() +
                            "/mc_desk.cfg --out " + out + " --set mc.trials=0");
  CHECK(bad.exit_code == 2);

  const std::string cmd = "mc-verify --config " + config_dir() +
                          "/mc_desk.cfg --out " + out +
                          " --seed 42 --set mc.trials=2000"
                          " --set mc.coincidence_trials=16";
  run(cmd);  // small-sample z may pass or fail; only determinism matters here
  const std::string first = slurp(out);
  CHECK(first.rfind("comparison,status,", 0) == 0);
  run(cmd);
  CHECK(slurp(out) == first);
  std::remove(out.c_str());
}

TEST_CASE("config parser round-trips values and rejects malformed input") {
  const std::string cfg = std::string(std::tmpnam(nullptr)) + ".cfg";
  {
    std::ofstream out(cfg);
    out << "[link]\nN_S = 0.25  # inline comment\n\n[protocol]\nconfig = active\n";
  }
  const qsc::RunSettings rs = qsc::load_run_settings(cfg);
  CHECK(rs.params.N_S == 0.25);
  CHECK(rs.protocol == qsc::Config::active);
  std::remove(cfg.c_str());

  {
    std::ofstream out(cfg);
    out << "N_S = 0.25\n";  // key before any section
  }
  CHECK_THROWS_AS(qsc::load_run_settings(cfg), qsc::ConfigError);
  std::remove(cfg.c_str());
  CHECK_THROWS_AS(qsc::load_run_settings("/nonexistent/q.cfg"), qsc::ConfigError);

  qsc::RunSettings rs2;
  CHECK_THROWS_AS(qsc::apply_override(rs2, "link.bogus=1"), qsc::ConfigError);
  CHECK_THROWS_AS(qsc::apply_override(rs2, "link.N_S=abc"), qsc::ConfigError);
  qsc::apply_override(rs2, "mc.seed=99");
  CHECK(rs2.seed == 99);
}
