#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsc/eve_analysis.hpp"
#include "qsc/link_model.hpp"

using namespace qsc;

TEST_CASE("transmissivity follows the dB law") {
  CHECK(transmissivity(0.2, 50.0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(transmissivity(0.2, 0.0) == 1.0);
  CHECK(transmissivity(0.0, 100.0) == 1.0);
  CHECK_THROWS_AS(transmissivity(-0.1, 10.0), std::domain_error);
  CHECK_THROWS_AS(transmissivity(0.2, -1.0), std::domain_error);
}

TEST_CASE("ASE conditional moments at the nominal 50 km point") {
  const SystemParams p;  // defaults: 50 km, N_S = 0.1, M = 200
  const ConditionalMoments m = ase_moments(p);
  CHECK(m.mu0 == doctest::Approx(1.1384199577e5).epsilon(1e-9));
  CHECK(m.mu1 == doctest::Approx(-m.mu0));
  CHECK(m.sigma0 == doctest::Approx(5.7504624162e4).epsilon(1e-9));
  CHECK(m.sigma1 == m.sigma0);
  CHECK(error_probability(m) == doctest::Approx(2.3868535024e-2).epsilon(1e-9));
}

TEST_CASE("OPA conditional moments at the nominal point") {
  const SystemParams p;
  const ConditionalMoments m = opa_moments(p);
  CHECK(m.mu0 == doctest::Approx(1.8593777924e2).epsilon(1e-9));
  CHECK(m.mu1 == doctest::Approx(1.7838258076e2).epsilon(1e-9));
  CHECK(m.sigma0 == doctest::Approx(1.8942071375e1).epsilon(1e-9));
  CHECK(error_probability(m) == doctest::Approx(4.1976970677e-1).epsilon(1e-9));
  SystemParams bad = p;
  bad.G_A = 1.0;
  CHECK_THROWS_AS(opa_moments(bad), std::domain_error);
}

TEST_CASE("active-attack moments with the matched eavesdropper") {
  SystemParams p;
  p.apply_active_consistency();
  const ActiveEveParams eve = solve_active_eve(p.N_S, p.kappa_S(), p.f);
  const ConditionalMoments m = active_moments(p, eve);
  CHECK(m.mu0 == doctest::Approx(1.0692e5).epsilon(1e-9));
  CHECK(m.sigma0 == doctest::Approx(5.7443200955e4).epsilon(1e-9));
  CHECK(error_probability(m) == doctest::Approx(3.1349719877e-2).epsilon(1e-9));
  ActiveEveParams bad = eve;
  bad.kappa_AB = 1.5;
  CHECK_THROWS_AS(active_moments(p, bad), std::domain_error);
}

TEST_CASE("error probability basics") {
  CHECK(q_function(0.0) == doctest::Approx(0.5));
  CHECK(q_function(3.0) + q_function(-3.0) == doctest::Approx(1.0).epsilon(1e-12));
  ConditionalMoments m{10.0, -10.0, 5.0, 5.0};
  CHECK(error_probability(m) == doctest::Approx(q_function(2.0)));
  m.sigma0 = 0.0;
  CHECK_THROWS_AS(error_probability(m), std::domain_error);
}

TEST_CASE("Shannon rate endpoints") {
  CHECK(shannon_rate_bps(0.0, 1e10) == doctest::Approx(1e10));
  CHECK(shannon_rate_bps(0.5, 1e10) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(shannon_rate_bps(0.11, 1e9) ==
        doctest::Approx(1e9 * (1.0 + 0.11 * std::log2(0.11) +
                               0.89 * std::log2(0.89))));
  CHECK_THROWS_AS(shannon_rate_bps(0.6, 1e9), std::domain_error);
}

TEST_CASE("asymptotic ASE error bound in the high-noise symmetric regime") {
  // For N_B = N_LO >> 1 and eta = 1 the error probability obeys
  // Pr(e) <= exp(-M*kappa_S*G_B*N_S/N_B)/2.
  for (const double nb : {1e5, 1e6}) {
    for (const double gb : {1e4, 1e5}) {
      SystemParams p;
      p.W = 2e12;
      p.R = 2e8;  // M = 1e4
      p.eta = 1.0;
      p.N_B = p.N_LO = nb;
      p.G_B = gb;
      p.N_S = 1.0;
      p.L_km = 50.0;
      const double m = p.modes_per_bit();
      const double bound =
          0.5 * std::exp(-m * p.kappa_S() * p.G_B * p.N_S / p.N_B);
      CHECK(error_probability(ase_moments(p)) <= bound);
    }
  }
}

TEST_CASE("idler storage correlation is near-unity for bright light") {
  const StorageCorrelation sc = storage_correlation(1e4, 0.01);
  CHECK(sc.mean_photons == doctest::Approx(1e4 + 1.0));
  CHECK(sc.correlation_sq == doctest::Approx(1e4 / (1e4 + 1.0)));
  CHECK(sc.correlation_sq < 1.0);
  CHECK_THROWS_AS(storage_correlation(-1.0, 0.01), std::domain_error);
  CHECK_THROWS_AS(storage_correlation(1e4, 0.0), std::domain_error);
}
