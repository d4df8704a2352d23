#include "qsc/mc_oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <thread>
#include <vector>

#include "qsc/cov_matrix.hpp"

namespace qsc {

namespace {

// Fixed shard count keeps results independent of how many threads run them.
constexpr int kShards = 64;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 shard_rng(std::uint64_t seed, int shard) {
  return std::mt19937_64(splitmix64(seed ^ (0x5851f42d4c957f2dULL * (shard + 1))));
}

unsigned int thread_count(int max_threads, std::size_t jobs) {
  unsigned int n = max_threads > 0 ? static_cast<unsigned int>(max_threads)
                                   : std::max(1u, std::thread::hardware_concurrency());
  return std::min<std::size_t>(n, jobs);
}

// Runs fn(shard) on a pool and returns the per-shard results in shard order so
// that aggregation is deterministic.
template <typename T, typename Fn>
std::vector<T> run_sharded(int max_threads, Fn fn) {
  std::vector<T> results(kShards);
  std::atomic<int> next{0};
  const unsigned int n_threads = thread_count(max_threads, kShards);
  auto worker = [&]() {
    for (int s = next.fetch_add(1); s < kShards; s = next.fetch_add(1))
      results[s] = fn(s);
  };
  if (n_threads <= 1) {
    worker();
    return results;
  }
  std::vector<std::future<void>> futures;
  for (unsigned int t = 0; t < n_threads; ++t)
    futures.push_back(std::async(std::launch::async, worker));
  for (auto& f : futures) f.get();
  return results;
}

struct KahanSum {
  double sum = 0, c = 0;
  void add(double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Factor of a symmetric PSD matrix usable for sampling, tolerating singular
// and slightly negative (roundoff) spectra. Throws if genuinely indefinite.
Eigen::MatrixXd psd_sampling_factor(const Eigen::MatrixXd& cov) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  const double scale = std::max(1e-300, es.eigenvalues().cwiseAbs().maxCoeff());
  Eigen::VectorXd d = es.eigenvalues();
  for (int i = 0; i < d.size(); ++i) {
    if (d[i] < -1e-10 * scale)
      throw NonclassicalStateError(
          "state has no nonnegative Gaussian P representation");
    d[i] = std::sqrt(std::max(d[i], 0.0));
  }
  return es.eigenvectors() * d.asDiagonal();
}

long long poisson_draw(std::mt19937_64& rng, double mean) {
  if (mean <= 0) return 0;
  std::poisson_distribution<long long> pd(mean);
  return pd(rng);
}

}  // namespace

McHomodyneResult mc_homodyne_error_rate(const McConfig& cfg) {
  const SystemParams& p = cfg.params;
  p.validate();
  if (cfg.trials == 0) throw std::domain_error("mc_homodyne_error_rate: no trials");
  const double ks = p.kappa_S();
  const long long m =
      cfg.M > 0 ? cfg.M : static_cast<long long>(p.modes_per_bit());

  // Complex-amplitude covariance of (returned signal, retained LO) per mode.
  Eigen::Matrix2d sigma;
  const double n_ret = ks * ks * p.G_B * p.N_S + ks * p.N_B;
  const double c = ks * std::sqrt(p.G_B * p.N_S * p.N_LO);
  sigma << n_ret, c, c, p.N_LO;
  const Eigen::MatrixXd chol = psd_sampling_factor(sigma);

  const std::uint64_t per_shard = cfg.trials / kShards;
  const std::uint64_t extra = cfg.trials % kShards;

  struct ShardAcc {
    std::uint64_t errors = 0;
    // Bit-aligned statistic power sums (up to the 4th, for the variance SE).
    double sum = 0, sum_sq = 0, sum_cu = 0, sum_4 = 0;
  };
  auto shard_run = [&](int s) -> ShardAcc {
    std::mt19937_64 rng = shard_rng(cfg.seed, s);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    std::bernoulli_distribution coin(0.5);
    const std::uint64_t n_trials =
        per_shard + (static_cast<std::uint64_t>(s) < extra ? 1 : 0);
    ShardAcc acc;
    KahanSum sum, sum_sq, sum_cu, sum_4;
    for (std::uint64_t t = 0; t < n_trials; ++t) {
      const int bit = coin(rng) ? 1 : 0;
      const double sign = bit ? -1.0 : 1.0;
      double i_plus = 0, i_minus = 0;
      for (long long k = 0; k < m; ++k) {
        const double z1r = normal(rng), z1i = normal(rng);
        const double z2r = normal(rng), z2i = normal(rng);
        const double br = sign * (chol(0, 0) * z1r + chol(0, 1) * z2r);
        const double bi = sign * (chol(0, 0) * z1i + chol(0, 1) * z2i);
        const double rr = chol(1, 0) * z1r + chol(1, 1) * z2r;
        const double ri = chol(1, 0) * z1i + chol(1, 1) * z2i;
        const double pr = br + rr, pi = bi + ri;
        const double mr = br - rr, mi = bi - ri;
        i_plus += 0.5 * p.eta * (pr * pr + pi * pi);
        i_minus += 0.5 * p.eta * (mr * mr + mi * mi);
      }
      const long long diff = poisson_draw(rng, i_plus) - poisson_draw(rng, i_minus);
      const int decision = diff > 0 ? 0 : diff < 0 ? 1 : (coin(rng) ? 1 : 0);
      if (decision != bit) ++acc.errors;
      // Mirror symmetry of the two bits: sign-align so the moments estimate
      // the bit-0 conditional distribution.
      const double aligned = sign * static_cast<double>(diff);
      const double sq = aligned * aligned;
      sum.add(aligned);
      sum_sq.add(sq);
      sum_cu.add(sq * aligned);
      sum_4.add(sq * sq);
    }
    acc.sum = sum.sum;
    acc.sum_sq = sum_sq.sum;
    acc.sum_cu = sum_cu.sum;
    acc.sum_4 = sum_4.sum;
    return acc;
  };

  const std::vector<ShardAcc> per = run_sharded<ShardAcc>(cfg.max_threads, shard_run);
  std::uint64_t errors = 0;
  KahanSum sum, sum_sq, sum_cu, sum_4;
  for (const ShardAcc& a : per) {
    errors += a.errors;
    sum.add(a.sum);
    sum_sq.add(a.sum_sq);
    sum_cu.add(a.sum_cu);
    sum_4.add(a.sum_4);
  }

  McHomodyneResult out;
  const double n = static_cast<double>(cfg.trials);
  out.pr_e.value = static_cast<double>(errors) / n;
  out.pr_e.std_error =
      std::sqrt(std::max(out.pr_e.value * (1.0 - out.pr_e.value), 1.0 / n) / n);
  const double mean = sum.sum / n;
  const double var = std::max(0.0, (sum_sq.sum - n * mean * mean) / (n - 1.0));
  out.stat_mean.value = mean;
  out.stat_mean.std_error = std::sqrt(var / n);
  out.stat_var.value = var;
  // SE of the sample variance from the empirical fourth central moment
  // (reduces to s^2*sqrt(2/n) in the normal case).
  const double m2 = sum_sq.sum / n - mean * mean;
  const double m4 = sum_4.sum / n - 4.0 * mean * sum_cu.sum / n +
                    6.0 * mean * mean * sum_sq.sum / n - 3.0 * std::pow(mean, 4);
  out.stat_var.std_error = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
  return out;
}

std::pair<double, double> covariance_composition_moments(const SystemParams& p,
                                                         int bit) {
  p.validate();
  if (p.G_A < 1.0)
    throw std::domain_error("covariance_composition_moments: G_A must be >= 1");
  const double ks = p.kappa_S();

  // Mode 0: signal out to Bob and back; mode 1: retained idler.
  CovMatrix cm = make_tmsv(p.N_S);
  cm = apply_loss(cm, 0, ks);
  cm = apply_bpsk(cm, 0, bit);
  cm = apply_phase_insensitive_amp(cm, 0, p.G_B, p.N_B);
  cm = apply_loss(cm, 0, ks);
  cm = apply_loss(cm, 1, ks * ks);  // idler storage during the roundtrip

  // OPA as a two-mode squeezer on (idler, returned signal); the measured
  // output is the amplified idler: x1' = sqrt(G) x1 + sqrt(G-1) x0,
  // p1' = sqrt(G) p1 - sqrt(G-1) p0.
  const double sg = std::sqrt(p.G_A);
  const double sgm = std::sqrt(p.G_A - 1.0);
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  s(0, 0) = sg;
  s(1, 1) = sg;
  s(0, 2) = sgm;
  s(1, 3) = -sgm;
  s(2, 2) = sg;
  s(3, 3) = sg;
  s(2, 0) = sgm;
  s(3, 1) = -sgm;
  // Quadrature order here is (x_idler, p_idler, x_signal, p_signal); permute
  // from the library's (x0, p0, x1, p1).
  Eigen::Matrix4d perm = Eigen::Matrix4d::Zero();
  perm(0, 2) = perm(1, 3) = perm(2, 0) = perm(3, 1) = 1.0;
  const Eigen::Matrix4d sp = perm.transpose() * s * perm;
  cm = CovMatrix(2, sp * cm.m * sp.transpose());
  cm = apply_loss(cm, 1, p.eta);

  const double n_mode = mode_mean_photons(cm, 1);
  const double lxx = cm.m(2, 2), lpp = cm.m(3, 3), lxp = cm.m(2, 3);
  const double aa_sq = (lxx - lpp) * (lxx - lpp) + 4.0 * lxp * lxp;
  const double m = p.modes_per_bit();
  const double mean = m * n_mode;
  const double var = m * (n_mode + n_mode * n_mode + aa_sq);
  return {mean, std::sqrt(var)};
}

McCoincidenceResult mc_coincidence_counting(const McConfig& cfg, double t_m) {
  const SystemParams& p = cfg.params;
  p.validate();
  if (cfg.trials < 2)
    throw std::domain_error("mc_coincidence_counting: need >= 2 intervals");
  if (t_m <= 0) throw std::domain_error("mc_coincidence_counting: T_M must be > 0");
  const long long m_g = std::llround(p.T_g * p.W);
  const long long gates = std::llround(t_m / p.T_g);
  if (m_g < 1 || gates < 1)
    throw std::domain_error("mc_coincidence_counting: T_g*W and T_M/T_g must be >= 1");

  const double ks = p.kappa_S();
  const double n_a = p.N_SPDC;
  const double n_b = p.kappa_B * ks * p.N_S;
  const double q = std::sqrt(p.kappa_B * p.f * ks * p.kappa_A) * 2.0 *
                   std::sqrt(p.N_SPDC * (p.N_SPDC + 1.0));

  // P-representation covariance of (xA, pA, xB, pB) for one mode pair: the
  // Wigner covariance minus the vacuum contribution.
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  cov(0, 0) = cov(1, 1) = 0.5 * n_a;
  cov(2, 2) = cov(3, 3) = 0.5 * n_b;
  cov(0, 2) = cov(2, 0) = 0.25 * q;
  cov(1, 3) = cov(3, 1) = -0.25 * q;
  const Eigen::Matrix4d chol = psd_sampling_factor(cov);

  const std::uint64_t per_shard = cfg.trials / kShards;
  const std::uint64_t extra = cfg.trials % kShards;

  struct ShardAcc {
    double sum = 0, sum_sq = 0;
  };
  auto shard_run = [&](int s) -> ShardAcc {
    std::mt19937_64 rng = shard_rng(cfg.seed, s);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::uint64_t n_trials =
        per_shard + (static_cast<std::uint64_t>(s) < extra ? 1 : 0);
    KahanSum sum, sum_sq;
    Eigen::Vector4d z, w;
    for (std::uint64_t t = 0; t < n_trials; ++t) {
      KahanSum products;
      for (long long g = 0; g < gates; ++g) {
        double i_a = 0, i_b = 0;
        for (long long k = 0; k < m_g; ++k) {
          z << normal(rng), normal(rng), normal(rng), normal(rng);
          w.noalias() = chol * z;
          i_a += p.eta * (w[0] * w[0] + w[1] * w[1]);
          i_b += p.eta * (w[2] * w[2] + w[3] * w[3]);
        }
        products.add(static_cast<double>(poisson_draw(rng, i_a) *
                                         poisson_draw(rng, i_b)));
      }
      const double c_hat = products.sum / t_m;
      sum.add(c_hat);
      sum_sq.add(c_hat * c_hat);
    }
    return {sum.sum, sum_sq.sum};
  };

  const std::vector<ShardAcc> per = run_sharded<ShardAcc>(cfg.max_threads, shard_run);
  KahanSum sum, sum_sq;
  for (const ShardAcc& a : per) {
    sum.add(a.sum);
    sum_sq.add(a.sum_sq);
  }

  const double n = static_cast<double>(cfg.trials);
  const double mean = sum.sum / n;
  const double var = std::max(0.0, (sum_sq.sum - n * mean * mean) / (n - 1.0));

  McCoincidenceResult out;
  out.c_ab.value = mean;
  out.c_ab.std_error = std::sqrt(var / n);
  out.var_c.value = var;
  out.var_c.std_error = var * std::sqrt(2.0 / (n - 1.0));
  out.intervals = n;
  return out;
}

}  // namespace qsc
