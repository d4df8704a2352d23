#include "qsc/monitor.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <tuple>

namespace qsc {

std::pair<double, double> singles_rates(const SystemParams& p) {
  const double s_a = p.eta * p.N_SPDC * p.W;
  const double s_b = p.eta * p.kappa_B * p.kappa_S() * p.N_S * p.W;
  // The monitor statistics assume much less than one photon per gate on each
  // detector; warn (once) when that regime is left instead of modeling
  // saturation.
  static bool warned = false;
  if (!warned && std::max(s_a, s_b) * p.T_g / p.eta > 0.1) {
    std::cerr << "warning: > 0.1 photons per monitor gate; "
                 "detector saturation is not modeled\n";
    warned = true;
  }
  return {s_a, s_b};
}

double coincidence_rate(const SystemParams& p) {
  const auto [s_a, s_b] = singles_rates(p);
  return s_a * s_b * p.T_g +
         p.eta * p.eta * p.kappa_B * p.f * p.kappa_S() * p.kappa_A * p.N_SPDC * p.W;
}

namespace {

// Variance of the per-gate coincidence product n_A*n_B for M_g iid Gaussian
// mode pairs with detected per-mode intensities a, b and squared
// phase-sensitive intensity cross-correlation c2, counts conditionally
// Poisson. Obtained by Gaussian-state moment factoring; exact to all orders.
double per_gate_product_variance(double a, double b, double c2, double m_g) {
  const double m = m_g;
  const double ab = a * b;
  return m * m * m * (2.0 * ab * ab + a * ab + b * ab + 2.0 * ab * c2) +
         m * m *
             (ab * ab + a * ab + b * ab + 8.0 * ab * c2 + ab + 2.0 * a * c2 +
              2.0 * b * c2 + c2 * c2) +
         m * (4.0 * ab * c2 + 2.0 * a * c2 + 2.0 * b * c2 + 2.0 * c2 * c2 + c2);
}

}  // namespace

double coincidence_estimator_variance(const SystemParams& p, double t_m) {
  if (t_m <= 0) throw std::domain_error("coincidence variance: T_M must be > 0");
  const double ks = p.kappa_S();
  const double a = p.eta * p.N_SPDC;
  const double b = p.eta * p.kappa_B * ks * p.N_S;
  const double c2 = p.eta * p.eta * p.kappa_B * p.f * ks * p.kappa_A * p.N_SPDC *
                    (p.N_SPDC + 1.0);
  const double m_g = p.T_g * p.W;
  return per_gate_product_variance(a, b, c2, m_g) / (p.T_g * t_m);
}

double f_estimator_stddev(const SystemParams& p, double t_m) {
  const auto [s_a, s_b] = singles_rates(p);
  if (s_b <= 0)
    throw std::domain_error("f_estimator_stddev: S_B = 0, f cannot be estimated");
  const double denom = p.eta * p.kappa_A * p.N_SPDC * s_b;
  return std::sqrt(coincidence_estimator_variance(p, t_m)) * p.N_S / denom;
}

double required_measurement_time(const SystemParams& p, double target_delta_f) {
  if (target_delta_f <= 0)
    throw std::domain_error("required_measurement_time: target must be > 0");
  // delta_f = sqrt(Var(T_M)) * N_S/denom with Var proportional to 1/T_M, so
  // T_M follows in closed form from the variance at unit time.
  const double df_at_1s = f_estimator_stddev(p, 1.0);
  return (df_at_1s / target_delta_f) * (df_at_1s / target_delta_f);
}

double singles_snr_db(double singles_rate, double t_m) {
  if (singles_rate <= 0 || t_m <= 0)
    throw std::domain_error("singles_snr_db: rate and T_M must be > 0");
  return 10.0 * std::log10(singles_rate * t_m);
}

MonitorStats monitor_stats(const SystemParams& p, double target_delta_f,
                           double snr_t_m) {
  MonitorStats st;
  std::tie(st.S_A, st.S_B) = singles_rates(p);
  st.C_AB = coincidence_rate(p);
  st.T_M = required_measurement_time(p, target_delta_f);
  st.var_C = coincidence_estimator_variance(p, st.T_M);
  st.delta_f = f_estimator_stddev(p, 1.0);  // delta_f at T_M = 1 s
  st.SNR_A_db = singles_snr_db(st.S_A, snr_t_m);
  st.SNR_B_db = singles_snr_db(st.S_B, snr_t_m);
  st.M_g = p.T_g * p.W;
  return st;
}

}  // namespace qsc
