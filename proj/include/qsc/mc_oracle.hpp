#ifndef QSC_MC_ORACLE_HPP
#define QSC_MC_ORACLE_HPP

#include <cstdint>
#include <utility>

#include "qsc/params.hpp"

namespace qsc {

// Requested state has no nonnegative Gaussian P representation, so
// Poisson-conditioned photodetection sampling does not apply.
class NonclassicalStateError : public std::runtime_error {
public:
  explicit NonclassicalStateError(const std::string& what)
      : std::runtime_error(what) {}
};

struct McConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  long long M = 0;      // modes per bit; 0 derives floor(W/R) from params
  int max_threads = 0;  // 0: hardware concurrency
  SystemParams params;  // desk-scaled parameters
};

struct McEstimate {
  double value = 0;
  double std_error = 0;
};

struct McHomodyneResult {
  McEstimate pr_e;       // empirical error rate, binomial standard error
  McEstimate stat_mean;  // bit-aligned decision statistic mean
  McEstimate stat_var;   // decision statistic variance
};

// Phase-space Monte Carlo of the ASE/homodyne chain: P-representation
// amplitude sampling, Poisson-conditioned photodetection, zero-threshold
// decision. The statistic moments are sign-aligned to bit 0 so they compare
// directly against the bit-0 conditional moments.
McHomodyneResult mc_homodyne_error_rate(const McConfig& cfg);

// Deterministic oracle for the SPDC/OPA chain: composes the full covariance
// with gaussian-core transforms and reads <N> and Var(N) off the result via
// Gaussian moment factoring.
std::pair<double, double> covariance_composition_moments(const SystemParams& p,
                                                         int bit);

struct McCoincidenceResult {
  McEstimate c_ab;       // empirical coincidence rate
  McEstimate var_c;      // empirical Var of the time-averaged estimator
  double intervals = 0;  // number of simulated T_M intervals
};

// Event-level simulation of the channel monitors: per-gate photon counts for
// both detectors sampled from the P representation of the monitor state,
// coincidence products aggregated over cfg.trials independent T_M intervals.
McCoincidenceResult mc_coincidence_counting(const McConfig& cfg, double t_m);

}  // namespace qsc

#endif
