#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "becthermo/constants.hpp"
#include "becthermo/params.hpp"
#include "becthermo/ramsey_mc.hpp"

using namespace becthermo;
using constants::hbar;
using constants::k_boltzmann;

namespace {

const DerivedParams& baseline() {
  static const DerivedParams d = derive(PhysicalConfig::baseline());
  return d;
}

// omega_T * t_opt ~ 8.13 at 0.5 nK (frozen from the optimizer tests)
double topt_half_nK() {
  return 8.1263 / (k_boltzmann * 0.5e-9 / hbar);
}

double rel_spread(const std::vector<EstimateRecord>& recs, double T_true) {
  double sum = 0.0, sum2 = 0.0;
  long used = 0;
  for (const auto& r : recs) {
    if (r.status == EstimateStatus::Unidentifiable) continue;
    sum += r.T_hat;
    sum2 += r.T_hat * r.T_hat;
    ++used;
  }
  REQUIRE(used >= 2);
  return std::sqrt((sum2 - sum * sum / used) / (used - 1)) / T_true;
}

}  // namespace

TEST_CASE("shot simulation determinism") {
  const auto& d = baseline();
  const double t = topt_half_nK();
  const ShotRecord a = simulate_shots(t, 0.5e-9, 100, 42, d);
  const ShotRecord b = simulate_shots(t, 0.5e-9, 100, 42, d);
  CHECK(a.n_plus == b.n_plus);
  CHECK(a.seed == 42);
  CHECK(a.nu == 100);
  CHECK(a.n_plus >= 0);
  CHECK(a.n_plus <= 100);

  const ShotRecord c = simulate_shots(t, 0.5e-9, 100, 43, d);
  CHECK(c.n_plus != a.n_plus);  // would collide only with ~1e-2 probability per bit pattern
}

TEST_CASE("zero dephasing gives all +1 outcomes") {
  const auto& d = baseline();
  const ShotRecord rec = simulate_shots(0.0, 0.5e-9, 1000, 7, d);
  CHECK(rec.n_plus == 1000);
}

TEST_CASE("binomial concentration at nu = 1e6") {
  const auto& d = baseline();
  const double t = topt_half_nK();
  const double gamma = gamma_numeric(t, 0.5e-9, d);
  const double p = 0.5 * (1.0 + std::exp(-gamma));
  const ShotRecord rec = simulate_shots(t, 0.5e-9, 1000000, 12345, d);
  const double p_hat = static_cast<double>(rec.n_plus) / 1e6;
  CHECK(std::abs(p_hat - p) < 3.0 * std::sqrt(p * (1.0 - p) / 1e6));
}

TEST_CASE("mle status outcomes") {
  const auto& d = baseline();
  const double t = topt_half_nK();
  const GammaTable table(t, d);

  SUBCASE("p_hat below one half is unidentifiable") {
    const EstimateRecord r = mle_temperature({t, 100, 40, 0}, table);
    CHECK(r.status == EstimateStatus::Unidentifiable);
    CHECK(std::isnan(r.T_hat));
  }
  SUBCASE("p_hat exactly one half is unidentifiable") {
    const EstimateRecord r = mle_temperature({t, 100, 50, 0}, table);
    CHECK(r.status == EstimateStatus::Unidentifiable);
  }
  SUBCASE("all +1 shots clip at the bracket floor") {
    const EstimateRecord r = mle_temperature({t, 100, 100, 0}, table);
    CHECK(r.status == EstimateStatus::Clipped);
    CHECK(r.T_hat == kMleBracketLow);
    CHECK(r.gamma_hat == 0.0);
  }
  SUBCASE("invalid records are rejected") {
    CHECK_THROWS_AS(mle_temperature({t, 0, 0, 0}, table), std::invalid_argument);
    CHECK_THROWS_AS(mle_temperature({t, 10, 11, 0}, table), std::invalid_argument);
  }
}

TEST_CASE("mle inverts the true dephasing exponent") {
  const auto& d = baseline();
  const double t = topt_half_nK();
  const double T_true = 0.5e-9;
  const GammaTable table(t, d);

  // noiseless record: n_plus chosen so p_hat reproduces Gamma(t, T_true)
  const double gamma = table.gamma(T_true);
  const long nu = 100000000;
  const long n_plus = std::lround(0.5 * (1.0 + std::exp(-gamma)) * nu);
  const EstimateRecord r = mle_temperature({t, nu, n_plus, 0}, table);
  CHECK(r.status == EstimateStatus::Ok);
  // the rounding of n_plus limits the attainable accuracy here
  CHECK(r.T_hat == doctest::Approx(T_true).epsilon(1e-4));
  // status ok implies Gamma(t, T_hat) = gamma_hat to root-find tolerance
  CHECK(table.gamma(r.T_hat) == doctest::Approx(r.gamma_hat).epsilon(1e-7));
}

TEST_CASE("mle accuracy at nu = 1e5: 95% of seeds land within 2%") {
  const auto& d = baseline();
  const double T_true = 0.5e-9;
  const double t = topt_half_nK();
  // CRB width ~0.9% at nu = 1e5, so 2% is ~2.2 standard errors (97% per
  // trial); 300 seeds keep the 95%-rate check clear of binomial noise.
  const long trials = 300;
  const auto recs = run_trials(t, T_true, 100000, trials, 2024, d);
  long within = 0;
  for (const auto& r : recs) {
    REQUIRE(r.status == EstimateStatus::Ok);
    if (std::abs(r.T_hat - T_true) / T_true < 0.02) ++within;
  }
  CHECK(within >= (trials * 95) / 100);
}

TEST_CASE("trial streams are reproducible and order-independent") {
  const auto& d = baseline();
  const double t = topt_half_nK();
  const auto a = run_trials(t, 0.5e-9, 500, 100, 9, d);
  const auto b = run_trials(t, 0.5e-9, 500, 100, 9, d);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].T_hat == b[i].T_hat);
    CHECK(a[i].status == b[i].status);
  }
}

TEST_CASE("empirical error shrinks as 1/sqrt(nu)") {
  const auto& d = baseline();
  const double T_true = 0.5e-9;
  const double t = topt_half_nK();
  double prev_scaled = -1.0;
  for (long nu : {400L, 1600L, 6400L}) {
    const auto recs = run_trials(t, T_true, nu, 150, 31, d);
    const double scaled = rel_spread(recs, T_true) * std::sqrt(static_cast<double>(nu));
    if (prev_scaled > 0.0) {
      CHECK(std::abs(scaled / prev_scaled - 1.0) < 0.20);
    }
    prev_scaled = scaled;
  }
}

TEST_CASE("crb_study table shape and reproducibility") {
  const auto& d = baseline();
  const auto rows = crb_study(0.5e-9, {200, 400}, 100, 5, d);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].nu == 200);
  CHECK(rows[1].nu == 400);
  for (const auto& row : rows) {
    CHECK(row.trials == 100);
    CHECK(row.unidentifiable_frac == 0.0);
    CHECK(row.mean_T_hat == doctest::Approx(0.5e-9).epsilon(0.05));
    // spread should sit near the Cramer-Rao line (loose unit-level bound)
    CHECK(row.rel_std > 0.5 * row.crb_rel_error);
    CHECK(row.rel_std < 2.0 * row.crb_rel_error);
  }
  CHECK(rows[0].crb_rel_error == doctest::Approx(std::sqrt(2.0) * rows[1].crb_rel_error)
                                     .epsilon(1e-12));

  const auto again = crb_study(0.5e-9, {200, 400}, 100, 5, d);
  CHECK(again[0].rel_std == rows[0].rel_std);
  CHECK(again[1].mean_T_hat == rows[1].mean_T_hat);

  CHECK_THROWS_AS(crb_study(0.5e-9, {400}, 99, 5, d), std::invalid_argument);
  CHECK_THROWS_AS(crb_study(0.5e-9, {0}, 100, 5, d), std::invalid_argument);
}

TEST_CASE("mix_seed separates streams") {
  CHECK(mix_seed(42, 0) != mix_seed(42, 1));
  CHECK(mix_seed(42, 0) != mix_seed(43, 0));
  CHECK(mix_seed(42, 7) == mix_seed(42, 7));
}
