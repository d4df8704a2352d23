#include "qsc/eve_analysis.hpp"

#include <algorithm>
#include <cmath>

namespace qsc {

ActiveEveParams solve_active_eve(double n_s, double kappa_s, double f) {
  if (n_s <= 0) throw std::domain_error("solve_active_eve: N_S must be > 0");
  if (kappa_s <= 0 || kappa_s > 1)
    throw std::domain_error("solve_active_eve: kappa_S must be in (0,1]");
  if (f <= 0 || f > 1) throw std::domain_error("solve_active_eve: f must be in (0,1]");
  ActiveEveParams eve;
  eve.kappa_AB = f * kappa_s;
  if (eve.kappa_AB >= 1.0)
    throw std::domain_error("solve_active_eve: f*kappa_S must be < 1");
  eve.kappa_BA = kappa_s;
  eve.N_Eve = (1.0 - f) * kappa_s * n_s / (1.0 - eve.kappa_AB);
  if (eve.N_Eve < 0) throw std::domain_error("solve_active_eve: negative N_Eve");
  return eve;
}

CovMatrix passive_conditional_cov(const SystemParams& p, int bit) {
  if (bit != 0 && bit != 1) throw std::domain_error("bit must be 0 or 1");
  const double ks = p.kappa_S();
  const double n_ab = (1.0 - ks) * p.N_S;
  const double n_ba = (1.0 - ks) * (p.G_B * ks * p.N_S + p.N_B);
  const double c = (bit == 0 ? 1.0 : -1.0) * 2.0 * (1.0 - ks) * std::sqrt(p.G_B * ks) * p.N_S;
  const double da = 2.0 * n_ab + 1.0;
  const double db = 2.0 * n_ba + 1.0;
  Eigen::MatrixXd m(4, 4);
  m << da, 0, c, 0,
       0, da, 0, c,
       c, 0, db, 0,
       0, c, 0, db;
  return CovMatrix(2, kVacuumVar * m);
}

CovMatrix active_conditional_cov(const SystemParams& p, const ActiveEveParams& eve,
                                 int bit) {
  if (bit != 0 && bit != 1) throw std::domain_error("bit must be 0 or 1");
  const double ks = p.kappa_S();
  const double kab = eve.kappa_AB;
  const double kba = eve.kappa_BA;
  const double ne = eve.N_Eve;
  const double gb_path = p.G_B * (1.0 - p.kappa_B);
  const double n_ab = (1.0 - kab) * p.N_S + kab * ne;
  const double c_ai = 2.0 * std::sqrt(kab * ne * (ne + 1.0));
  const double c_ab =
      2.0 * std::sqrt((1.0 - kba) * gb_path * (1.0 - kab) * kab) * (p.N_S - ne);
  const double c_ib =
      2.0 * std::sqrt((1.0 - kba) * gb_path * (1.0 - kab) * ne * (ne + 1.0));
  const double n_ba = (1.0 - kba) * (gb_path * ks * p.N_S + p.N_B);
  const double s = (bit == 0 ? 1.0 : -1.0);   // (-1)^k
  const double s1 = -s;                       // (-1)^(k+1)
  const double d_a = 2.0 * n_ab + 1.0;
  const double d_i = 2.0 * ne + 1.0;
  const double d_b = 2.0 * n_ba + 1.0;
  Eigen::MatrixXd m(6, 6);
  m << d_a, 0, -c_ai, 0, s * c_ab, 0,
       0, d_a, 0, c_ai, 0, s * c_ab,
       -c_ai, 0, d_i, 0, s * c_ib, 0,
       0, c_ai, 0, d_i, 0, s1 * c_ib,
       s * c_ab, 0, s * c_ib, 0, d_b, 0,
       0, s * c_ab, 0, s1 * c_ib, 0, d_b;
  return CovMatrix(3, kVacuumVar * m);
}

namespace {

HolevoBound assemble_bound(double s_uncond_ub, double s_cond0, double s_cond1,
                           double modes_per_bit, double rate_bps) {
  HolevoBound out;
  out.conditional_entropy_bits = modes_per_bit * 0.5 * (s_cond0 + s_cond1);
  out.unconditional_entropy_ub_bits = modes_per_bit * s_uncond_ub;
  double bits = out.unconditional_entropy_ub_bits - out.conditional_entropy_bits;
  bits = std::max(bits, 0.0);
  if (bits > 1.0) {
    bits = 1.0;  // Eve cannot learn more than the one bit Bob sends
    out.clipped = true;
  }
  out.chi_ub_bps = bits * rate_bps;
  return out;
}

}  // namespace

HolevoBound holevo_ub_passive(const SystemParams& p) {
  const double s0 = entropy_bits(passive_conditional_cov(p, 0));
  const double s1 = entropy_bits(passive_conditional_cov(p, 1));
  // Bit-averaged covariance is diagonal; its thermal-product entropy is the
  // sum of g over the two leaked-mode photon numbers.
  const double ks = p.kappa_S();
  const double s_ub = thermal_entropy_g((1.0 - ks) * p.N_S) +
                      thermal_entropy_g((1.0 - ks) * (p.G_B * ks * p.N_S + p.N_B));
  return assemble_bound(s_ub, s0, s1, p.modes_per_bit(), p.R);
}

HolevoBound holevo_ub_active(const SystemParams& p, const ActiveEveParams& eve) {
  const double s0 = entropy_bits(active_conditional_cov(p, eve, 0));
  const double s1 = entropy_bits(active_conditional_cov(p, eve, 1));
  // Bit-averaging zeroes C_AB and C_IB, leaving the (AB, I) pair correlated
  // and the BA mode independent.
  CovMatrix avg(3, 0.5 * (active_conditional_cov(p, eve, 0).m +
                          active_conditional_cov(p, eve, 1).m));
  const double s_ub = thermal_product_entropy(avg);
  return assemble_bound(s_ub, s0, s1, p.modes_per_bit(), p.R);
}

}  // namespace qsc
