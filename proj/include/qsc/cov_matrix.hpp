#ifndef QSC_COV_MATRIX_HPP
#define QSC_COV_MATRIX_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace qsc {

// Vacuum quadrature variance. All covariance matrices in this library use the
// convention in which a vacuum mode has <x^2> = <p^2> = 1/4.
inline constexpr double kVacuumVar = 0.25;

class PhysicalityError : public std::runtime_error {
public:
  explicit PhysicalityError(const std::string& what) : std::runtime_error(what) {}
};

// Wigner covariance matrix of an n-mode zero-mean Gaussian state, quadrature
// ordering (x1, p1, x2, p2, ...).
struct CovMatrix {
  int n_modes = 0;
  Eigen::MatrixXd m;  // 2n x 2n, symmetric

  CovMatrix() = default;
  CovMatrix(int n, Eigen::MatrixXd data);

  static CovMatrix vacuum(int n_modes);

  // Direct sum of two states on disjoint mode sets.
  static CovMatrix tensor(const CovMatrix& a, const CovMatrix& b);
};

// Block-diagonal symplectic form with 2x2 blocks [[0,1],[-1,0]].
Eigen::MatrixXd symplectic_form(int n_modes);

// Two-mode squeezed vacuum with signal/idler brightness N_S.
CovMatrix make_tmsv(double n_s);

// Completely-correlated thermal signal/reference pair (ASE source output).
CovMatrix make_correlated_thermal(double n_s, double n_lo);

// Pure-loss channel of transmissivity kappa on one mode; vacuum enters the
// free port.
CovMatrix apply_loss(const CovMatrix& cov, int mode, double kappa);

// Phase-insensitive amplifier parameterized by gain G and the output photon
// number N_out that a vacuum input would produce (N_out >= G-1).
CovMatrix apply_phase_insensitive_amp(const CovMatrix& cov, int mode, double gain,
                                      double n_out);

// Beamsplitter: out_i = sqrt(k) in_i + sqrt(1-k) in_j,
//               out_j = sqrt(1-k) in_i - sqrt(k) in_j.
CovMatrix apply_beamsplitter(const CovMatrix& cov, int mode_i, int mode_j,
                             double kappa);

// BPSK phase flip: bit 1 negates the mode's field, i.e. all of its
// cross-correlations change sign; bit 0 is the identity.
CovMatrix apply_bpsk(const CovMatrix& cov, int mode, int bit);

// Symplectic eigenvalues (absolute eigenvalues of i*Omega*cov, one per mode),
// descending. cov must be symmetric positive definite.
std::vector<double> symplectic_eigenvalues(const CovMatrix& cov);

// Von Neumann entropy (bits) of a thermal state with mean photon number N.
double thermal_entropy_g(double n_mean);

// Exact Gaussian-state von Neumann entropy in bits, via symplectic
// diagonalization and the occupation map N = 2*nu - 1/2.
double entropy_bits(const CovMatrix& cov);

// Entropy (bits) of the maximum-entropy thermal-product state compatible with
// cov: uncorrelated modes contribute g(N) from their diagonal photon numbers;
// each correlated block is symplectically diagonalized first.
double thermal_product_entropy(const CovMatrix& cov);

// Mean photon number of one mode read off the covariance diagonal.
double mode_mean_photons(const CovMatrix& cov, int mode);

}  // namespace qsc

#endif
