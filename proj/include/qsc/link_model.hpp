#ifndef QSC_LINK_MODEL_HPP
#define QSC_LINK_MODEL_HPP

#include "qsc/eve_params.hpp"
#include "qsc/params.hpp"

namespace qsc {

// Conditional moments of Alice's decision statistic given Bob's bit.
// Convention: bit 0 maps to the positive mean, so mu0 >= mu1.
struct ConditionalMoments {
  double mu0 = 0;
  double mu1 = 0;
  double sigma0 = 0;
  double sigma1 = 0;
};

double transmissivity(double alpha_db_per_km, double l_km);

// Conditional moments of the OPA receiver's photon-count statistic
// (SPDC/OPA configuration, passive eavesdropping, kappa_I = kappa_S^2).
ConditionalMoments opa_moments(const SystemParams& p);

// Conditional moments of the broadband homodyne statistic (ASE configuration,
// passive eavesdropping, perfect reference storage).
ConditionalMoments ase_moments(const SystemParams& p);

// Homodyne moments under the active attack with Bob's monitor tap in place.
ConditionalMoments active_moments(const SystemParams& p, const ActiveEveParams& eve);

// Gaussian-approximation bit error probability Q((mu0-mu1)/(sigma0+sigma1)).
double error_probability(const ConditionalMoments& m);

// Standard-normal tail probability via the complementary error function.
double q_function(double x);

// Shannon rate R*(1 - H2(Pe)) in bps.
double shannon_rate_bps(double pr_e, double rate_bps);

// Mean photon number and squared normalized signal-reference correlation of
// the amplify-then-store reference (G_R = 1/kappa_I, N_R = G_R).
struct StorageCorrelation {
  double mean_photons;
  double correlation_sq;
};
StorageCorrelation storage_correlation(double n_lo, double kappa_i);

}  // namespace qsc

#endif
