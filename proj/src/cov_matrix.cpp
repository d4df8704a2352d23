#include "qsc/cov_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace qsc {

namespace {

void check_mode(const CovMatrix& cov, int mode) {
  if (mode < 0 || mode >= cov.n_modes)
    throw std::domain_error("mode index out of range");
}

}  // namespace

CovMatrix::CovMatrix(int n, Eigen::MatrixXd data) : n_modes(n), m(std::move(data)) {
  if (n <= 0) throw std::domain_error("n_modes must be positive");
  if (m.rows() != 2 * n || m.cols() != 2 * n)
    throw std::domain_error("covariance dimension mismatch");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::domain_error("covariance not symmetric");
  m = 0.5 * (m + m.transpose());
}

CovMatrix CovMatrix::vacuum(int n_modes) {
  return CovMatrix(n_modes,
                   kVacuumVar * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

CovMatrix CovMatrix::tensor(const CovMatrix& a, const CovMatrix& b) {
  const int n = a.n_modes + b.n_modes;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  m.topLeftCorner(2 * a.n_modes, 2 * a.n_modes) = a.m;
  m.bottomRightCorner(2 * b.n_modes, 2 * b.n_modes) = b.m;
  return CovMatrix(n, std::move(m));
}

Eigen::MatrixXd symplectic_form(int n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int i = 0; i < n_modes; ++i) {
    omega(2 * i, 2 * i + 1) = 1.0;
    omega(2 * i + 1, 2 * i) = -1.0;
  }
  return omega;
}

CovMatrix make_tmsv(double n_s) {
  if (n_s < 0) throw std::domain_error("make_tmsv: N_S must be >= 0");
  const double d = 2.0 * n_s + 1.0;
  const double c = 2.0 * std::sqrt(n_s * (n_s + 1.0));
  Eigen::MatrixXd m(4, 4);
  m << d, 0, c, 0,
       0, d, 0, -c,
       c, 0, d, 0,
       0, -c, 0, d;
  return CovMatrix(2, kVacuumVar * m);
}

CovMatrix make_correlated_thermal(double n_s, double n_lo) {
  if (n_s < 0 || n_lo < 0)
    throw std::domain_error("make_correlated_thermal: brightness must be >= 0");
  const double ds = 2.0 * n_s + 1.0;
  const double dl = 2.0 * n_lo + 1.0;
  const double c = 2.0 * std::sqrt(n_s * n_lo);
  Eigen::MatrixXd m(4, 4);
  m << ds, 0, c, 0,
       0, ds, 0, c,
       c, 0, dl, 0,
       0, c, 0, dl;
  return CovMatrix(2, kVacuumVar * m);
}

CovMatrix apply_loss(const CovMatrix& cov, int mode, double kappa) {
  check_mode(cov, mode);
  if (kappa < 0.0 || kappa > 1.0)
    throw std::domain_error("apply_loss: kappa must be in [0,1]");
  Eigen::MatrixXd m = cov.m;
  const double r = std::sqrt(kappa);
  m.row(2 * mode) *= r;
  m.row(2 * mode + 1) *= r;
  m.col(2 * mode) *= r;
  m.col(2 * mode + 1) *= r;
  m(2 * mode, 2 * mode) += (1.0 - kappa) * kVacuumVar;
  m(2 * mode + 1, 2 * mode + 1) += (1.0 - kappa) * kVacuumVar;
  return CovMatrix(cov.n_modes, std::move(m));
}

CovMatrix apply_phase_insensitive_amp(const CovMatrix& cov, int mode, double gain,
                                      double n_out) {
  check_mode(cov, mode);
  if (gain < 1.0) throw std::domain_error("apply_phase_insensitive_amp: G must be >= 1");
  if (n_out < gain - 1.0)
    throw std::domain_error("apply_phase_insensitive_amp: N_out must be >= G-1");
  Eigen::MatrixXd m = cov.m;
  const double r = std::sqrt(gain);
  m.row(2 * mode) *= r;
  m.row(2 * mode + 1) *= r;
  m.col(2 * mode) *= r;
  m.col(2 * mode + 1) *= r;
  // Added noise such that a vacuum input yields diagonal (2*N_out+1)/4.
  const double added = (2.0 * n_out - gain + 1.0) * kVacuumVar;
  m(2 * mode, 2 * mode) += added;
  m(2 * mode + 1, 2 * mode + 1) += added;
  return CovMatrix(cov.n_modes, std::move(m));
}

CovMatrix apply_beamsplitter(const CovMatrix& cov, int mode_i, int mode_j,
                             double kappa) {
  check_mode(cov, mode_i);
  check_mode(cov, mode_j);
  if (mode_i == mode_j) throw std::domain_error("apply_beamsplitter: i == j");
  if (kappa < 0.0 || kappa > 1.0)
    throw std::domain_error("apply_beamsplitter: kappa must be in [0,1]");
  const int d = 2 * cov.n_modes;
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(d, d);
  const double t = std::sqrt(kappa);
  const double r = std::sqrt(1.0 - kappa);
  for (int q = 0; q < 2; ++q) {
    const int i = 2 * mode_i + q;
    const int j = 2 * mode_j + q;
    s(i, i) = t;
    s(i, j) = r;
    s(j, i) = r;
    s(j, j) = -t;
  }
  return CovMatrix(cov.n_modes, s * cov.m * s.transpose());
}

CovMatrix apply_bpsk(const CovMatrix& cov, int mode, int bit) {
  check_mode(cov, mode);
  if (bit != 0 && bit != 1) throw std::domain_error("apply_bpsk: bit must be 0 or 1");
  if (bit == 0) return cov;
  Eigen::MatrixXd m = cov.m;
  m.row(2 * mode) *= -1.0;
  m.row(2 * mode + 1) *= -1.0;
  m.col(2 * mode) *= -1.0;
  m.col(2 * mode + 1) *= -1.0;
  return CovMatrix(cov.n_modes, std::move(m));
}

std::vector<double> symplectic_eigenvalues(const CovMatrix& cov) {
  const Eigen::MatrixXd sym = 0.5 * (cov.m + cov.m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pd_check(sym);
  if (pd_check.eigenvalues().minCoeff() <= 0.0)
    throw PhysicalityError("symplectic_eigenvalues: covariance not positive definite");
  const Eigen::MatrixXcd a =
      std::complex<double>(0.0, 1.0) * (symplectic_form(cov.n_modes) * sym);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
  std::vector<double> mags(2 * cov.n_modes);
  for (int i = 0; i < 2 * cov.n_modes; ++i) mags[i] = std::abs(es.eigenvalues()(i));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  // Eigenvalues come in +/- nu pairs; keep one of each.
  std::vector<double> nus(cov.n_modes);
  for (int i = 0; i < cov.n_modes; ++i) nus[i] = mags[2 * i];
  return nus;
}

double thermal_entropy_g(double n_mean) {
  if (n_mean <= 0.0) return 0.0;
  return (n_mean + 1.0) * std::log2(n_mean + 1.0) - n_mean * std::log2(n_mean);
}

namespace {

double occupation_from_nu(double nu) {
  if (nu < kVacuumVar - 1e-9)
    throw PhysicalityError("symplectic eigenvalue below vacuum");
  double n = 2.0 * nu - 0.5;
  if (n < 0.0) {
    if (n < -1e-12) throw PhysicalityError("negative thermal occupation");
    n = 0.0;
  }
  return n;
}

}  // namespace

double entropy_bits(const CovMatrix& cov) {
  double s = 0.0;
  for (double nu : symplectic_eigenvalues(cov)) s += thermal_entropy_g(occupation_from_nu(nu));
  return s;
}

double mode_mean_photons(const CovMatrix& cov, int mode) {
  return cov.m(2 * mode, 2 * mode) + cov.m(2 * mode + 1, 2 * mode + 1) - 0.5;
}

double thermal_product_entropy(const CovMatrix& cov) {
  const int n = cov.n_modes;
  // Union modes that share any nonzero cross-correlation block.
  std::vector<int> comp(n, -1);
  const double tol = 1e-12 * std::max(1.0, cov.m.cwiseAbs().maxCoeff());
  int n_comp = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    // BFS from i
    std::vector<int> stack{i};
    comp[i] = n_comp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        if (comp[v] >= 0 || v == u) continue;
        if (cov.m.block(2 * u, 2 * v, 2, 2).cwiseAbs().maxCoeff() > tol) {
          comp[v] = n_comp;
          stack.push_back(v);
        }
      }
    }
    ++n_comp;
  }
  double s = 0.0;
  for (int c = 0; c < n_comp; ++c) {
    std::vector<int> modes;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) modes.push_back(i);
    if (modes.size() == 1) {
      double nm = mode_mean_photons(cov, modes[0]);
      if (nm < -1e-12) throw PhysicalityError("negative mode occupation");
      s += thermal_entropy_g(std::max(nm, 0.0));
    } else {
      const int k = static_cast<int>(modes.size());
      Eigen::MatrixXd sub(2 * k, 2 * k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          sub.block(2 * a, 2 * b, 2, 2) = cov.m.block(2 * modes[a], 2 * modes[b], 2, 2);
      for (double nu : symplectic_eigenvalues(CovMatrix(k, sub)))
        s += thermal_entropy_g(occupation_from_nu(nu));
    }
  }
  return s;
}

}  // namespace qsc
