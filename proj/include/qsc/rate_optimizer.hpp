#ifndef QSC_RATE_OPTIMIZER_HPP
#define QSC_RATE_OPTIMIZER_HPP

#include <vector>

#include "qsc/params.hpp"

namespace qsc {

struct OperatingPoint {
  double N_S = 0;
  double R = 0;
  double Pr_e = 0.5;
  double I_AB_bps = 0;
  double chi_ub_bps = 0;
  double delta_I_lb_bps = 0;
  bool feasible = false;  // false when no (N_S, R) satisfies the Pe constraint
};

struct RatePoint {
  double L_km = 0;
  double kappa_S = 1;
  OperatingPoint best;
  double bits_per_mode = 0;
};

// Secure-rate lower bound beta*I_AB - chi_EB^UB, floored at zero, at a fixed
// operating point. For passive_opa the OPA gain G_A is taken from p.
OperatingPoint secure_rate_lb(const SystemParams& p, Config config);

// Maximize the secure-rate lower bound over N_S (log grid [1e-6, 1], 61
// points) and R (log grid [1e6, R_max], 41 points) subject to Pr(e) <= Pe_max,
// followed by one golden-section refinement pass on N_S at the best R.
// Deterministic tie-break: smallest N_S, then largest R.
OperatingPoint optimize_operating_point(const SystemParams& p, Config config);

// Optimized rate for each distance in l_grid_km. Points are evaluated
// independently (optionally in parallel); the result is ordered by L.
std::vector<RatePoint> distance_sweep(const SystemParams& tmpl, Config config,
                                      const std::vector<double>& l_grid_km,
                                      int max_threads = 0);

// Takeoka-Guha-Wilde two-way bits/mode upper bound 2*log2((1+k)/(1-k)).
double tgw_bound_bits_per_mode(double kappa_s);

// Ideal CV-QKD achievable bits/mode, -log2(1-k).
double cvqkd_bits_per_mode(double kappa_s);

}  // namespace qsc

#endif
