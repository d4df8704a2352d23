#ifndef QSC_MONITOR_HPP
#define QSC_MONITOR_HPP

#include <utility>

#include "qsc/params.hpp"

namespace qsc {

struct MonitorStats {
  double S_A = 0;        // Alice singles rate (1/s)
  double S_B = 0;        // Bob singles rate (1/s)
  double C_AB = 0;       // coincidence rate (1/s)
  double var_C = 0;      // Var of the time-averaged coincidence estimator
  double delta_f = 0;    // std dev of the f estimator
  double T_M = 0;        // monitoring time (s)
  double SNR_A_db = 0;
  double SNR_B_db = 0;
  double M_g = 0;        // modes per gate, T_g*W
};

// Singles rates S_A = eta*N_SPDC*W and S_B = eta*kappa_B*kappa_S*N_S*W.
std::pair<double, double> singles_rates(const SystemParams& p);

// Coincidence rate: accidentals S_A*S_B*T_g plus the true-coincidence term
// eta^2*kappa_B*f*kappa_S*kappa_A*N_SPDC*W.
double coincidence_rate(const SystemParams& p);

// Variance of the time-averaged coincidence estimator over a T_M interval,
// from exact Gaussian-state moment factoring of the per-gate counts.
double coincidence_estimator_variance(const SystemParams& p, double t_m);

// Standard deviation of the f estimator
// f~ = (C~_AB - S_A*S_B*T_g)*N_S/(eta*kappa_A*N_SPDC*S_B).
double f_estimator_stddev(const SystemParams& p, double t_m);

// Monitoring time for which delta_f reaches the target (closed-form, since
// Var scales as 1/T_M).
double required_measurement_time(const SystemParams& p, double target_delta_f = 1e-3);

// Singles-measurement SNR in dB: 10*log10(S*T_M).
double singles_snr_db(double singles_rate, double t_m);

MonitorStats monitor_stats(const SystemParams& p, double target_delta_f = 1e-3,
                           double snr_t_m = 0.1);

}  // namespace qsc

#endif
