#include "qsc/rate_optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <thread>

#include "qsc/eve_analysis.hpp"
#include "qsc/link_model.hpp"

namespace qsc {

namespace {

ConditionalMoments moments_for(const SystemParams& p, Config config) {
  switch (config) {
    case Config::passive_ase:
      return ase_moments(p);
    case Config::passive_opa:
      return opa_moments(p);
    case Config::active:
      return active_moments(p, solve_active_eve(p.N_S, p.kappa_S(), p.f));
  }
  throw std::logic_error("unknown config");
}

// Per-mode-group Holevo quantity S_therm - S_cond (bits); independent of R.
double holevo_bits_per_group(const SystemParams& p, Config config) {
  if (config == Config::active) {
    const ActiveEveParams eve = solve_active_eve(p.N_S, p.kappa_S(), p.f);
    const HolevoBound hb = holevo_ub_active(p, eve);
    return (hb.unconditional_entropy_ub_bits - hb.conditional_entropy_bits) /
           p.modes_per_bit();
  }
  const HolevoBound hb = holevo_ub_passive(p);
  return (hb.unconditional_entropy_ub_bits - hb.conditional_entropy_bits) /
         p.modes_per_bit();
}

double golden_min(double lo, double hi, const std::function<double(double)>& f,
                  int iters = 60) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && (b - a) > 1e-12 * std::max(1.0, std::abs(b)); ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Pick the OPA gain minimizing Alice's error probability at fixed (N_S, R).
double best_opa_gain(SystemParams p) {
  auto pe_of = [&p](double log_gm1) {
    p.G_A = 1.0 + std::pow(10.0, log_gm1);
    return error_probability(opa_moments(p));
  };
  const double x = golden_min(-9.0, 0.0, pe_of, 50);
  return 1.0 + std::pow(10.0, x);
}

OperatingPoint evaluate(SystemParams p, Config config, double n_s, double rate,
                        double holevo_per_group) {
  p.N_S = n_s;
  p.R = rate;
  if (config == Config::active) p.apply_active_consistency();
  if (config == Config::passive_opa) p.G_A = best_opa_gain(p);
  OperatingPoint op;
  op.N_S = n_s;
  op.R = rate;
  op.Pr_e = error_probability(moments_for(p, config));
  op.I_AB_bps = shannon_rate_bps(op.Pr_e, rate);
  const double chi_bits = std::min(
      std::max(p.modes_per_bit() * holevo_per_group, 0.0), 1.0);
  op.chi_ub_bps = chi_bits * rate;
  op.delta_I_lb_bps = std::max(0.0, p.beta * op.I_AB_bps - op.chi_ub_bps);
  op.feasible = true;
  return op;
}

}  // namespace

OperatingPoint secure_rate_lb(const SystemParams& p, Config config) {
  p.validate();
  return evaluate(p, config, p.N_S, p.R, holevo_bits_per_group(p, config));
}

OperatingPoint optimize_operating_point(const SystemParams& p, Config config) {
  p.validate();
  const bool enforce_pe = p.Pe_max < 0.5;
  constexpr int kNsPoints = 61;
  constexpr int kRatePoints = 41;
  const double ns_lo = std::log10(1e-6), ns_hi = std::log10(1.0);
  const double r_lo = std::log10(1e6), r_hi = std::log10(p.R_max);

  SystemParams work = p;
  std::map<double, double> holevo_cache;  // N_S -> per-group bits
  auto holevo_for = [&](double n_s) {
    auto it = holevo_cache.find(n_s);
    if (it != holevo_cache.end()) return it->second;
    work.N_S = n_s;
    const double v = holevo_bits_per_group(work, config);
    holevo_cache.emplace(n_s, v);
    return v;
  };

  OperatingPoint best;
  best.feasible = false;
  double best_rate = -1.0;
  auto consider = [&](const OperatingPoint& op) {
    if (enforce_pe && op.Pr_e > p.Pe_max) return;
    // Tie-break: smallest N_S, then largest R.
    const bool better =
        op.delta_I_lb_bps > best_rate + 1e-12 * std::max(best_rate, 1.0) ||
        (std::abs(op.delta_I_lb_bps - best_rate) <=
             1e-12 * std::max(best_rate, 1.0) &&
         best.feasible &&
         (op.N_S < best.N_S || (op.N_S == best.N_S && op.R > best.R)));
    if (!best.feasible || better) {
      best = op;
      best_rate = op.delta_I_lb_bps;
    }
  };

  std::vector<double> ns_grid(kNsPoints);
  for (int i = 0; i < kNsPoints; ++i)
    ns_grid[i] = std::pow(10.0, ns_lo + (ns_hi - ns_lo) * i / (kNsPoints - 1));

  for (int i = 0; i < kNsPoints; ++i) {
    const double hol = holevo_for(ns_grid[i]);
    for (int j = 0; j < kRatePoints; ++j) {
      const double rate =
          std::pow(10.0, r_lo + (r_hi - r_lo) * j / (kRatePoints - 1));
      consider(evaluate(p, config, ns_grid[i], rate, hol));
    }
  }
  if (!best.feasible) return best;  // empty feasible set: zero-rate diagnostic

  // One golden-section refinement pass on N_S at the best R.
  const auto lower = std::lower_bound(ns_grid.begin(), ns_grid.end(), best.N_S);
  const int idx = static_cast<int>(lower - ns_grid.begin());
  const double lo = std::log10(ns_grid[std::max(idx - 1, 0)]);
  const double hi = std::log10(ns_grid[std::min(idx + 1, kNsPoints - 1)]);
  auto neg_obj = [&](double log_ns) {
    const double n_s = std::pow(10.0, log_ns);
    const OperatingPoint op = evaluate(p, config, n_s, best.R, holevo_for(n_s));
    if (enforce_pe && op.Pr_e > p.Pe_max) return std::numeric_limits<double>::max();
    return -op.delta_I_lb_bps;
  };
  const double refined = std::pow(10.0, golden_min(lo, hi, neg_obj, 50));
  consider(evaluate(p, config, refined, best.R, holevo_for(refined)));
  return best;
}

std::vector<RatePoint> distance_sweep(const SystemParams& tmpl, Config config,
                                      const std::vector<double>& l_grid_km,
                                      int max_threads) {
  if (l_grid_km.empty()) throw std::domain_error("distance_sweep: empty sweep");
  for (size_t i = 1; i < l_grid_km.size(); ++i)
    if (l_grid_km[i] <= l_grid_km[i - 1])
      throw std::domain_error("distance_sweep: L grid must be strictly increasing");

  std::vector<RatePoint> out(l_grid_km.size());
  auto run_point = [&](size_t i) {
    SystemParams p = tmpl;
    p.L_km = l_grid_km[i];
    RatePoint rp;
    rp.L_km = p.L_km;
    rp.kappa_S = p.kappa_S();
    rp.best = optimize_operating_point(p, config);
    rp.bits_per_mode = rp.best.delta_I_lb_bps / p.W;
    out[i] = rp;
  };

  unsigned int n_threads = max_threads > 0
                               ? static_cast<unsigned int>(max_threads)
                               : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned int>(n_threads, l_grid_km.size());
  if (n_threads <= 1) {
    for (size_t i = 0; i < l_grid_km.size(); ++i) run_point(i);
    return out;
  }
  std::vector<std::future<void>> futures;
  std::atomic<size_t> next{0};
  for (unsigned int t = 0; t < n_threads; ++t) {
    futures.push_back(std::async(std::launch::async, [&]() {
      for (size_t i = next.fetch_add(1); i < l_grid_km.size(); i = next.fetch_add(1))
        run_point(i);
    }));
  }
  for (auto& f : futures) f.get();
  return out;
}

double tgw_bound_bits_per_mode(double kappa_s) {
  if (kappa_s < 0 || kappa_s > 1)
    throw std::domain_error("tgw_bound_bits_per_mode: kappa_S must be in [0,1]");
  if (kappa_s == 1.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::log2((1.0 + kappa_s) / (1.0 - kappa_s));
}

double cvqkd_bits_per_mode(double kappa_s) {
  if (kappa_s < 0 || kappa_s > 1)
    throw std::domain_error("cvqkd_bits_per_mode: kappa_S must be in [0,1]");
  if (kappa_s == 1.0) return std::numeric_limits<double>::infinity();
  return -std::log2(1.0 - kappa_s);
}

}  // namespace qsc
