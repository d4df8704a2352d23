#ifndef QSC_PARAMS_HPP
#define QSC_PARAMS_HPP

#include <cmath>
#include <stdexcept>

namespace qsc {

enum class Config { passive_ase, passive_opa, active };

// Physical parameters of one protocol configuration. Defaults are the nominal
// operating point: 2 THz source, 0.2 dB/km fiber, G_B = N_B = N_LO = 1e4,
// eta = 0.9, 100 ps monitor gates.
struct SystemParams {
  double W = 2e12;             // source bandwidth (Hz)
  double R = 1e10;             // modulation rate (bps)
  double alpha_db_per_km = 0.2;
  double L_km = 50.0;
  double N_S = 0.1;            // signal brightness (photons/mode)
  double N_LO = 1e4;           // reference / LO brightness
  double G_B = 1e4;            // Bob's amplifier gain
  double N_B = 1e4;            // Bob's output ASE brightness
  double eta = 0.9;            // detector / homodyne efficiency
  double G_A = 1.0 + 1e-3;     // Alice's OPA gain (SPDC/OPA only)
  double kappa_B = 0.1;        // Bob's monitor tap
  double N_ASE = 1.0;          // active-source ASE brightness
  double T_g = 1e-10;          // monitor gate time (s)
  double beta = 0.94;          // reconciliation efficiency
  double f = 0.99;             // fraction of Bob's light that is Alice's
  double R_max = 1e10;
  double Pe_max = 0.1;

  // Active-source split. Consistent defaults for N_S = 0.1; call
  // apply_active_consistency() after changing N_S in the active configuration.
  double kappa_A = 0.901;
  double N_SPDC = 0.1 / (100.0 * 0.901);

  double kappa_S() const { return std::pow(10.0, -alpha_db_per_km * L_km / 10.0); }
  double modes_per_bit() const { return std::floor(W / R); }

  // Source split with kappa_A = 1 - 0.99*N_S, so 99% of the light sent to Bob
  // is ASE and each transmitted mode carries N_S photons on average.
  void apply_active_consistency() {
    kappa_A = 1.0 - 0.99 * N_S;
    N_SPDC = N_S / (100.0 * kappa_A);
  }

  void validate() const {
    if (W <= 0) throw std::domain_error("W must be > 0");
    if (R <= 0) throw std::domain_error("R must be > 0");
    if (std::floor(W / R) < 1) throw std::domain_error("W/R must allow M >= 1");
    if (N_S < 0 || N_LO < 0 || N_B < 0 || N_ASE < 0)
      throw std::domain_error("brightness parameters must be >= 0");
    if (G_B < 1) throw std::domain_error("G_B must be >= 1");
    if (eta < 0 || eta > 1) throw std::domain_error("eta must be in [0,1]");
    if (kappa_B < 0 || kappa_B >= 1) throw std::domain_error("kappa_B must be in [0,1)");
    if (beta <= 0 || beta > 1) throw std::domain_error("beta must be in (0,1]");
    if (alpha_db_per_km < 0 || L_km < 0)
      throw std::domain_error("fiber parameters must be >= 0");
  }
};

}  // namespace qsc

#endif
