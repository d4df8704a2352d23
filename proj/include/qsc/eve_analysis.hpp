#ifndef QSC_EVE_ANALYSIS_HPP
#define QSC_EVE_ANALYSIS_HPP

#include "qsc/cov_matrix.hpp"
#include "qsc/eve_params.hpp"
#include "qsc/params.hpp"

namespace qsc {

// Holevo-information upper bound for Eve's collective attack.
struct HolevoBound {
  double chi_ub_bps = 0;
  double conditional_entropy_bits = 0;      // per-bit, M mode groups
  double unconditional_entropy_ub_bits = 0; // per-bit thermal-product bound
  bool clipped = false;                     // min(., 1)*R clip engaged
};

// Solve Eve's injection/tap parameters from the power-matching and
// light-fraction constraints: kappa_AB = f*kappa_S, kappa_BA = kappa_S,
// (1-kappa_AB)*N_Eve = (1-f)*kappa_S*N_S.
ActiveEveParams solve_active_eve(double n_s, double kappa_s, double f);

// Eve's two-mode conditional covariance for the passive attack (modes: light
// lost Alice->Bob, light lost Bob->Alice), given Bob's bit.
CovMatrix passive_conditional_cov(const SystemParams& p, int bit);

// Eve's three-mode conditional covariance for the active attack (modes:
// Alice->Bob tap, Eve's idler, Bob->Alice tap), given Bob's bit.
CovMatrix active_conditional_cov(const SystemParams& p, const ActiveEveParams& eve,
                                 int bit);

HolevoBound holevo_ub_passive(const SystemParams& p);
HolevoBound holevo_ub_active(const SystemParams& p, const ActiveEveParams& eve);

}  // namespace qsc

#endif
