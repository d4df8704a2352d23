#include "qsc/link_model.hpp"

#include <cmath>
#include <iostream>

namespace qsc {

double transmissivity(double alpha_db_per_km, double l_km) {
  if (alpha_db_per_km < 0 || l_km < 0)
    throw std::domain_error("transmissivity: negative loss or length");
  return std::pow(10.0, -alpha_db_per_km * l_km / 10.0);
}

namespace {

double checked_modes(const SystemParams& p) {
  const double m = p.modes_per_bit();
  // The Gaussian approximation behind the error-probability formulas is
  // justified for M >= 200; warn when a caller leaves that regime.
  static bool warned = false;
  if (m < 200 && !warned) {
    std::cerr << "warning: M = " << m
              << " modes/bit < 200; Gaussian approximation may be inaccurate\n";
    warned = true;
  }
  return m;
}

}  // namespace

ConditionalMoments opa_moments(const SystemParams& p) {
  if (p.G_A <= 1.0) throw std::domain_error("opa_moments: G_A must be > 1");
  const double m = checked_modes(p);
  const double ks = p.kappa_S();
  const double ki = ks * ks;  // idler stored for the roundtrip delay
  const double common =
      p.G_A * ki * p.N_S +
      (p.G_A - 1.0) * (ks * (p.G_B * ks * p.N_S + p.N_B) + 1.0);
  const double cross = 2.0 * std::sqrt(p.G_A * (p.G_A - 1.0) * ki * ks * ks * p.G_B *
                                       p.N_S * (p.N_S + 1.0));
  ConditionalMoments out;
  out.mu0 = m * p.eta * (common + cross);
  out.mu1 = m * p.eta * (common - cross);
  out.sigma0 = std::sqrt(out.mu0 * (out.mu0 / m + 1.0));
  out.sigma1 = std::sqrt(out.mu1 * (out.mu1 / m + 1.0));
  return out;
}

ConditionalMoments ase_moments(const SystemParams& p) {
  const double m = checked_modes(p);
  const double ks = p.kappa_S();
  ConditionalMoments out;
  out.mu0 = 2.0 * m * p.eta * ks * std::sqrt(p.G_B * p.N_S * p.N_LO);
  out.mu1 = -out.mu0;
  const double var =
      m * (p.eta * (ks * ks * p.G_B * p.N_S + ks * p.N_B + p.N_LO) +
           2.0 * p.eta * p.eta * (2.0 * ks * ks * p.G_B * p.N_S + ks * p.N_B) * p.N_LO);
  out.sigma0 = out.sigma1 = std::sqrt(var);
  return out;
}

ConditionalMoments active_moments(const SystemParams& p, const ActiveEveParams& eve) {
  if (eve.kappa_AB < 0 || eve.kappa_AB > 1 || eve.kappa_BA < 0 || eve.kappa_BA > 1 ||
      eve.N_Eve < 0)
    throw std::domain_error("active_moments: invalid eve parameters");
  const double m = checked_modes(p);
  const double ks = p.kappa_S();
  const double gb_path = eve.kappa_BA * p.G_B * (1.0 - p.kappa_B);
  const double n_r_act = gb_path * ks * p.N_S + eve.kappa_BA * p.N_B;
  const double sig_pow = gb_path * eve.kappa_AB * (1.0 - p.kappa_A) * p.N_ASE * p.N_LO;
  ConditionalMoments out;
  out.mu0 = 2.0 * m * p.eta * std::sqrt(sig_pow);
  out.mu1 = -out.mu0;
  const double var = m * (p.eta * (n_r_act + p.N_LO) +
                          2.0 * p.eta * p.eta * (n_r_act * p.N_LO + sig_pow));
  out.sigma0 = out.sigma1 = std::sqrt(var);
  return out;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double error_probability(const ConditionalMoments& m) {
  if (m.sigma0 <= 0 || m.sigma1 <= 0)
    throw std::domain_error("error_probability: non-positive sigma");
  return q_function((m.mu0 - m.mu1) / (m.sigma0 + m.sigma1));
}

double shannon_rate_bps(double pr_e, double rate_bps) {
  if (pr_e < 0 || pr_e > 0.5)
    throw std::domain_error("shannon_rate_bps: Pr(e) must be in [0, 1/2]");
  double h2 = 0.0;
  if (pr_e > 0.0 && pr_e < 1.0)
    h2 = -pr_e * std::log2(pr_e) - (1.0 - pr_e) * std::log2(1.0 - pr_e);
  return rate_bps * (1.0 - h2);
}

StorageCorrelation storage_correlation(double n_lo, double kappa_i) {
  if (kappa_i <= 0 || kappa_i > 1)
    throw std::domain_error("storage_correlation: kappa_I must be in (0,1]");
  if (n_lo < 0) throw std::domain_error("storage_correlation: N_LO must be >= 0");
  // G_R = 1/kappa_I and N_R = G_R make the stored mean kappa_I*G_R*N_LO +
  // kappa_I*N_R = N_LO + 1 regardless of kappa_I.
  return {n_lo + 1.0, n_lo / (n_lo + 1.0)};
}

}  // namespace qsc
