#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "becthermo/constants.hpp"
#include "becthermo/errors.hpp"
#include "becthermo/params.hpp"

using namespace becthermo;

TEST_CASE("baseline derived parameters reproduce the reference values") {
  const DerivedParams d = derive(PhysicalConfig::baseline());

  // two-significant-figure reference values, so 5% tolerance
  CHECK(d.P_tilde == doctest::Approx(0.13).epsilon(0.05));
  CHECK(d.alpha == doctest::Approx(0.77).epsilon(0.05));
  CHECK(d.ell_B == doctest::Approx(3.4e-7).epsilon(0.05));

  // alpha = 4 n a_B exactly
  CHECK(d.alpha == 4.0 * d.config.n * d.config.a_B);
  // omega_c = sqrt(2) c_s / ell_A exactly
  CHECK(d.omega_c == doctest::Approx(std::sqrt(2.0) * d.c_s / d.ell_A).epsilon(1e-15));
}

TEST_CASE("eta covers the weak-to-moderate coupling range") {
  PhysicalConfig c = PhysicalConfig::baseline();
  c.a_AB = 1e-9;
  CHECK(derive(c).eta == doctest::Approx(0.004).epsilon(0.1));
  c.a_AB = 5e-9;
  CHECK(derive(c).eta == doctest::Approx(0.10).epsilon(0.1));
}

TEST_CASE("cutoff-to-thermal frequency ratio at 1 nK") {
  const DerivedParams d = derive(PhysicalConfig::baseline());
  const double omega_T = constants::k_boltzmann * 1e-9 / constants::hbar;
  CHECK(d.omega_c / omega_T == doctest::Approx(84.0).epsilon(0.02));
}

TEST_CASE("derived prefactors satisfy their algebraic cross-identities") {
  // P, P_tilde, eta and delta_e are computed from independent closed forms;
  // these identities tie them together and catch transcription slips.
  const DerivedParams d = derive(PhysicalConfig::baseline());
  using constants::hbar;
  using constants::pi;

  // healing length vs sound speed: xi = hbar/(m_B c_s)
  CHECK(d.xi == doctest::Approx(hbar / (d.config.m_B * d.c_s)).epsilon(1e-14));

  // P = (2/pi) (hbar delta_e)^2 / n
  const double dE = hbar * d.delta_e;
  CHECK(d.P == doctest::Approx(2.0 / pi * dE * dE / d.config.n).epsilon(1e-14));

  // P_tilde = 4 P / (ell_B hbar^2 omega_B^2)
  CHECK(d.P_tilde ==
        doctest::Approx(4.0 * d.P /
                        (d.ell_B * hbar * hbar * d.config.omega_B * d.config.omega_B))
            .epsilon(1e-14));

  // eta = P_tilde / (32 sqrt(2)) * (n a_B)^{-3/2}
  CHECK(d.eta == doctest::Approx(d.P_tilde / (32.0 * std::sqrt(2.0)) *
                                 std::pow(d.config.n * d.config.a_B, -1.5))
                     .epsilon(1e-14));
}

TEST_CASE("derive is deterministic") {
  const DerivedParams a = derive(PhysicalConfig::baseline());
  const DerivedParams b = derive(PhysicalConfig::baseline());
  CHECK(a.P == b.P);
  CHECK(a.P_tilde == b.P_tilde);
  CHECK(a.eta == b.eta);
  CHECK(a.delta_e == b.delta_e);
}

TEST_CASE("doubling a_AB rescales only the coupling-derived fields") {
  PhysicalConfig c = PhysicalConfig::baseline();
  const DerivedParams d1 = derive(c);
  c.a_AB *= 2.0;
  const DerivedParams d2 = derive(c);

  CHECK(d2.ell_B == d1.ell_B);
  CHECK(d2.ell_A == d1.ell_A);
  CHECK(d2.g_B == d1.g_B);
  CHECK(d2.m_AB == d1.m_AB);
  CHECK(d2.c_s == d1.c_s);
  CHECK(d2.omega_c == d1.omega_c);
  CHECK(d2.xi == d1.xi);
  CHECK(d2.alpha == d1.alpha);

  CHECK(d2.delta_e == doctest::Approx(2.0 * d1.delta_e).epsilon(1e-14));
  CHECK(d2.P == doctest::Approx(4.0 * d1.P).epsilon(1e-14));
  CHECK(d2.P_tilde == doctest::Approx(4.0 * d1.P_tilde).epsilon(1e-14));
  CHECK(d2.eta == doctest::Approx(4.0 * d1.eta).epsilon(1e-14));
}

TEST_CASE("config validation rejects bad inputs") {
  PhysicalConfig c = PhysicalConfig::baseline();
  c.m_A = -1.0;
  CHECK_THROWS_AS(derive(c), std::invalid_argument);

  c = PhysicalConfig::baseline();
  c.n = 0.0;
  CHECK_THROWS_AS(derive(c), std::invalid_argument);

  // quasi-1D weak-interaction regime requires n*a_B < 1
  c = PhysicalConfig::baseline();
  c.a_B = 2.0 / c.n;
  CHECK_THROWS_AS(derive(c), std::invalid_argument);
}

TEST_CASE("dimensionless mapping") {
  const DerivedParams d = derive(PhysicalConfig::baseline());

  SUBCASE("t = 0 gives t_tilde = 0") {
    CHECK(dimensionless(0.0, 0.3e-9, d).t_tilde == 0.0);
  }
  SUBCASE("omega_T at 1 nK") {
    CHECK(dimensionless(1.0, 1e-9, d).omega_T == doctest::Approx(130.9).epsilon(1e-3));
  }
  SUBCASE("T_tilde = 1 when hbar omega_B = 2 k_B T") {
    const double T = constants::hbar * d.config.omega_B / (2.0 * constants::k_boltzmann);
    CHECK(dimensionless(1.0, T, d).T_tilde == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("rejects T <= 0 and t < 0") {
    CHECK_THROWS_AS(dimensionless(1.0, 0.0, d), std::invalid_argument);
    CHECK_THROWS_AS(dimensionless(-1.0, 1e-9, d), std::invalid_argument);
  }
}

TEST_CASE("config file round trip and error paths") {
  const char* path = "test_params_config.tmp";
  {
    std::ofstream out(path);
    out << "# baseline parameters\n"
        << "m_A_kg = 3.82e-26\n"
        << "m_B_kg = 14.45e-26   # Rb-87\n"
        << "omega_B_rad_s = 6283.185307179586\n"
        << "n_per_m = 3.6e7\n"
        << "a_B_m = 5.3e-9\n"
        << "a_AB_m = 2.9e-9\n"
        << "sigma = 0.5\n";
  }
  const PhysicalConfig c = PhysicalConfig::from_file(path);
  CHECK(c.m_A == 3.82e-26);
  CHECK(c.sigma == 0.5);
  CHECK(derive(c).alpha == doctest::Approx(0.7632).epsilon(1e-12));

  {
    std::ofstream out(path);
    out << "m_A_kg = 3.82e-26\n";  // missing the rest
  }
  CHECK_THROWS_AS(PhysicalConfig::from_file(path), UsageError);

  {
    std::ofstream out(path);
    out << "m_A_kg = 3.82e-26\nm_B_kg = 14.45e-26\nomega_B_rad_s = 6283.2\n"
        << "n_per_m = 3.6e7\na_B_m = 5.3e-9\na_AB_m = 2.9e-9\nsigma = 0.5\n"
        << "unknown_key = 1\n";
  }
  CHECK_THROWS_AS(PhysicalConfig::from_file(path), UsageError);

  {
    std::ofstream out(path);
    out << "m_A_kg 3.82e-26\n";  // no '='
  }
  CHECK_THROWS_AS(PhysicalConfig::from_file(path), UsageError);

  CHECK_THROWS_AS(PhysicalConfig::from_file("does_not_exist.cfg"), UsageError);
  std::remove(path);
}
