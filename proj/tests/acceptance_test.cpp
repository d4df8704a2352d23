// End-to-end acceptance gate: one pass/fail line per criterion.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qsc/cov_matrix.hpp"
#include "qsc/eve_analysis.hpp"
#include "qsc/link_model.hpp"
#include "qsc/mc_oracle.hpp"
#include "qsc/monitor.hpp"
#include "qsc/rate_optimizer.hpp"

using namespace qsc;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": "
            << detail << "\n";
  if (!pass) ++g_failures;
}

std::vector<double> km_grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (double l = lo; l <= hi + 1e-9; l += step) g.push_back(l);
  return g;
}

// Criterion 1: optimized ASE secure rate at 50 km, SPDC/OPA suppression
// factor, and single-threaded sweep runtime.
void criterion_1() {
  SystemParams ase;
  const auto t0 = std::chrono::steady_clock::now();
  const auto sweep = distance_sweep(ase, Config::passive_ase, km_grid(0, 60, 1), 1);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double rate_50 = sweep[50].best.delta_I_lb_bps;

  SystemParams opa;
  opa.beta = 1.0;
  opa.Pe_max = 0.5;  // no error cap on the ideal-reconciliation OPA curve
  const double opa_50 =
      optimize_operating_point(opa, Config::passive_opa).delta_I_lb_bps;
  const double ratio = rate_50 / opa_50;

  std::ostringstream d;
  d << "ASE rate(50 km) = " << rate_50 / 1e9 << " Gbps (band [2.5, 4.5]), "
    << "ASE/OPA ratio = " << ratio << " (band [3e2, 3e3]), "
    << "sweep " << secs << " s single-threaded (< 120)";
  report(1, rate_50 >= 2.5e9 && rate_50 <= 4.5e9 && ratio >= 3e2 &&
            ratio <= 3e3 && secs < 120.0,
         d.str());
}

// Criterion 2: active-eavesdropping secure rate at 50 km.
void criterion_2() {
  SystemParams p;
  const double rate = optimize_operating_point(p, Config::active).delta_I_lb_bps;
  std::ostringstream d;
  d << "active rate(50 km) = " << rate / 1e9 << " Gbps (band [1.4, 2.6])";
  report(2, rate >= 1.4e9 && rate <= 2.6e9, d.str());
}

// Criterion 3: monitoring time at 50 km and monotonicity over distance.
void criterion_3() {
  SystemParams p;
  p.apply_active_consistency();
  const double t_50 = required_measurement_time(p, 1e-3);
  bool monotone = true;
  double prev = 0.0;
  for (double l = 0.0; l <= 60.0; l += 1.0) {
    p.L_km = l;
    const double t = required_measurement_time(p, 1e-3);
    monotone = monotone && t > prev;
    prev = t;
  }
  std::ostringstream d;
  d << "T_M(50 km, delta_f = 1e-3) = " << t_50
    << " s (band [0.3, 3]), curve monotone = " << (monotone ? "yes" : "no");
  report(3, t_50 >= 0.3 && t_50 <= 3.0 && monotone, d.str());
}

// Criterion 4: singles SNR spot values.
void criterion_4() {
  const double snr_a = singles_snr_db(0.9 * 1e-3 * 2e12, 0.1);
  const double snr_b = singles_snr_db(0.9 * 0.1 * 1e-2 * 0.1 * 2e12, 0.1);
  std::ostringstream d;
  d << "SNR_A = " << snr_a << " dB (82.55 +/- 0.1), SNR_B = " << snr_b
    << " dB (72.55 +/- 0.1)";
  report(4, std::abs(snr_a - 82.55) <= 0.1 && std::abs(snr_b - 72.55) <= 0.1,
         d.str());
}

SystemParams desk_point(double r_bps, double l_km, double n_s, double g_b,
                        double n_b, double n_lo, double eta) {
  SystemParams p;
  p.W = 2e8;
  p.R = r_bps;
  p.L_km = l_km;
  p.N_S = n_s;
  p.G_B = g_b;
  p.N_B = n_b;
  p.N_LO = n_lo;
  p.eta = eta;
  p.T_g = 1e-8;
  p.kappa_A = 0.15;
  p.N_SPDC = 1e-3;
  p.f = 0.5;
  return p;
}

// Criterion 5: oracle equivalence (closed forms vs covariance composition and
// event-level Monte Carlo).
void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();

  // (a) covariance composition vs closed-form OPA moments, 20 random sets.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_rel = 0.0;
  for (int i = 0; i < 20; ++i) {
    SystemParams p;
    p.N_S = 1e-4 + u(rng);
    p.L_km = 1.0 + 79.0 * u(rng);
    p.G_B = 1.0 + 1e4 * u(rng);
    p.N_B = p.G_B - 1.0 + 1e4 * u(rng);
    p.eta = 0.05 + 0.95 * u(rng);
    p.G_A = 1.0 + std::pow(10.0, -6.0 * u(rng));
    const ConditionalMoments cm = opa_moments(p);
    for (int bit : {0, 1}) {
      const auto [mean, sigma] = covariance_composition_moments(p, bit);
      const double mu = bit == 0 ? cm.mu0 : cm.mu1;
      worst_rel = std::max(worst_rel, std::abs(mean - mu) / mu);
    }
  }
  const bool pass_a = worst_rel < 1e-9;

  // (b) homodyne Monte Carlo vs analytic error probability, 5 desk points.
  const std::vector<SystemParams> points = {
      desk_point(2e5, 50, 0.1, 20, 200, 20, 0.9),
      desk_point(4e5, 50, 0.1, 1e3, 1e3, 1e3, 0.9),
      desk_point(1e5, 30, 0.002, 50, 100, 50, 0.8),
      desk_point(4e5, 50, 0.02, 100, 500, 500, 1.0),
      desk_point(2e5, 10, 0.01, 10, 50, 30, 0.9),
  };
  double worst_z = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    McConfig cfg;
    cfg.trials = 100000;
    cfg.seed = 1000 + i;
    cfg.params = points[i];
    const McHomodyneResult r = mc_homodyne_error_rate(cfg);
    const double ref = error_probability(ase_moments(points[i]));
    worst_z = std::max(worst_z, std::abs(r.pr_e.value - ref) / r.pr_e.std_error);
  }
  const bool pass_b = worst_z <= 3.0;

  // (c) coincidence counting vs closed-form rate and variance.
  McConfig ccfg;
  ccfg.trials = 3200;
  ccfg.seed = 3;
  ccfg.params = desk_point(2e5, 50, 0.1, 20, 200, 20, 0.9);
  const double t_m = 5e-4;
  const McCoincidenceResult cr = mc_coincidence_counting(ccfg, t_m);
  const double z_rate = std::abs(cr.c_ab.value - coincidence_rate(ccfg.params)) /
                        cr.c_ab.std_error;
  const double var_rel =
      std::abs(cr.var_c.value - coincidence_estimator_variance(ccfg.params, t_m)) /
      coincidence_estimator_variance(ccfg.params, t_m);
  const bool pass_c = z_rate <= 3.0 && var_rel <= 0.05;

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream d;
  d << "OPA-moment rel err " << worst_rel << " (< 1e-9), homodyne worst |z| "
    << worst_z << " (<= 3), coincidence z " << z_rate << " (<= 3), Var rel "
    << var_rel << " (<= 0.05), runtime " << secs << " s (< 300)";
  report(5, pass_a && pass_b && pass_c && secs < 300.0, d.str());
}

// Criterion 6: property suites.
void criterion_6() {
  bool ok = true;
  std::ostringstream d;

  // Pure-state entropy and thermal identity.
  ok = ok && entropy_bits(make_tmsv(0.8)) <= 1e-9;
  for (const double n : {0.01, 1.0, 100.0}) {
    CovMatrix t = CovMatrix::vacuum(1);
    t.m *= (2.0 * n + 1.0);
    ok = ok && std::abs(entropy_bits(t) - thermal_entropy_g(n)) <=
                   1e-10 * std::max(1.0, thermal_entropy_g(n));
  }

  // Physicality over random transform chains.
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000 && ok; ++i) {
    CovMatrix cm = make_tmsv(u(rng));
    cm = apply_loss(cm, 0, 0.02 + 0.98 * u(rng));
    const double g = 1.0 + 5.0 * u(rng);
    cm = apply_phase_insensitive_amp(cm, 0, g, g - 1.0 + 3.0 * u(rng));
    cm = apply_loss(cm, 1, 0.02 + 0.98 * u(rng));
    for (const double nu : symplectic_eigenvalues(cm))
      ok = ok && nu >= kVacuumVar - 1e-9;
  }
  d << "physicality/entropy ok=" << ok;

  // Holevo non-negativity and bit symmetry.
  bool holevo_ok = true;
  for (int i = 0; i < 500 && holevo_ok; ++i) {
    SystemParams p;
    p.N_S = 1e-3 + u(rng);
    p.L_km = 80.0 * u(rng);
    p.apply_active_consistency();
    holevo_ok = holevo_ok && holevo_ub_passive(p).chi_ub_bps >= 0.0;
    const ActiveEveParams eve = solve_active_eve(p.N_S, p.kappa_S(), p.f);
    holevo_ok = holevo_ok && holevo_ub_active(p, eve).chi_ub_bps >= 0.0;
    const double s0 = entropy_bits(active_conditional_cov(p, eve, 0));
    const double s1 = entropy_bits(active_conditional_cov(p, eve, 1));
    holevo_ok = holevo_ok && std::abs(s0 - s1) <= 1e-10 * std::max(1.0, s0);
  }
  d << ", holevo ok=" << holevo_ok;

  // Asymptotic ASE error bound.
  SystemParams hb;
  hb.W = 2e12;
  hb.R = 2e8;
  hb.eta = 1.0;
  hb.N_B = hb.N_LO = 1e6;
  hb.G_B = 1e5;
  hb.N_S = 1.0;
  const double bound = 0.5 * std::exp(-hb.modes_per_bit() * hb.kappa_S() *
                                      hb.G_B * hb.N_S / hb.N_B);
  const bool bound_ok = error_probability(ase_moments(hb)) <= bound;
  d << ", error-bound ok=" << bound_ok;

  // Ordering across the loss grid.
  bool order_ok = true;
  for (int db = 1; db <= 30 && order_ok; db += 1) {
    SystemParams p;
    p.L_km = db / p.alpha_db_per_km;
    const double protocol =
        optimize_operating_point(p, Config::passive_ase).delta_I_lb_bps / p.W;
    const double ks = p.kappa_S();
    order_ok = protocol <= cvqkd_bits_per_mode(ks) &&
               cvqkd_bits_per_mode(ks) <= tgw_bound_bits_per_mode(ks);
  }
  d << ", ordering ok=" << order_ok;

  // delta_f scaling and estimator unbiasedness.
  SystemParams mp;
  mp.apply_active_consistency();
  const bool df_ok = std::abs(f_estimator_stddev(mp, 4.0) -
                              f_estimator_stddev(mp, 1.0) / 2.0) <= 1e-12;
  bool unbiased_ok = true;
  for (int i = 0; i < 100 && unbiased_ok; ++i) {
    SystemParams p;
    // Ranges keep the accidental/true-coincidence ratio moderate so the
    // subtraction in f_hat stays well-conditioned.
    p.N_S = 0.01 + 0.49 * u(rng);
    p.L_km = 80.0 * u(rng);
    p.f = 0.3 + 0.7 * u(rng);
    p.apply_active_consistency();
    const auto [s_a, s_b] = singles_rates(p);
    const double f_hat = (coincidence_rate(p) - s_a * s_b * p.T_g) * p.N_S /
                         (p.eta * p.kappa_A * p.N_SPDC * s_b);
    unbiased_ok = std::abs(f_hat - p.f) <= 1e-12;
  }
  d << ", delta_f ok=" << df_ok << ", unbiasedness ok=" << unbiased_ok;

  report(6, ok && holevo_ok && bound_ok && order_ok && df_ok && unbiased_ok,
         d.str());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Criterion 7: byte-identical CLI outputs across reruns.
void criterion_7() {
  const char* bin = std::getenv("QSC_BIN");
  const char* cfg_dir = std::getenv("QSC_CONFIG_DIR");
  if (!bin || !cfg_dir) {
    report(7, false, "QSC_BIN/QSC_CONFIG_DIR not set; cannot drive the CLI");
    return;
  }
  const std::string out = std::string(std::tmpnam(nullptr)) + ".csv";
  const std::string sweep_cmd = std::string(bin) + " rate-sweep --config " +
                                cfg_dir + "/fig_rate_ase.cfg --out " + out +
                                " --set sweep.L_max_km=5 2>/dev/null";
  const std::string verify_cmd = std::string(bin) + " mc-verify --config " +
                                 cfg_dir + "/mc_desk.cfg --out " + out +
                                 " --seed 7 --set mc.trials=4000"
                                 " --set mc.coincidence_trials=32 2>/dev/null";
  bool ok = true;
  for (const std::string& cmd : {sweep_cmd, verify_cmd}) {
    if (std::system(cmd.c_str()) == -1) {
      ok = false;
      break;
    }
    const std::string first = slurp(out);
    ok = ok && std::system(cmd.c_str()) != -1;
    ok = ok && !first.empty() && slurp(out) == first;
  }
  std::remove(out.c_str());
  report(7, ok, "CSV and Monte Carlo report byte-identical across reruns");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
