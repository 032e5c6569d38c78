#pragma once

#include <cstdint>
#include <vector>

#include "becthermo/dephasing.hpp"
#include "becthermo/params.hpp"

namespace becthermo {

// One batch of nu projective sigma_x measurements at encoding time t.
//
// Sampling contract (pinned for bit-exact reproducibility across platforms):
// outcomes are Bernoulli with p_plus = (1 + e^-Gamma)/2, drawn by comparing
// 53-bit uniforms u = (x >> 11) * 2^-53 from std::mt19937_64 against p_plus.
// The engine is seeded with splitmix64-mixed words, see mix_seed below.
struct ShotRecord {
  double t;       // encoding time [s]
  long nu;        // shot count
  long n_plus;    // number of +1 outcomes, 0 <= n_plus <= nu
  std::uint64_t seed;
};

enum class EstimateStatus { Ok, Clipped, Unidentifiable };

struct EstimateRecord {
  double T_hat;      // [K]; bracket edge when Clipped, NaN when Unidentifiable
  double gamma_hat;  // inferred dephasing exponent; NaN when Unidentifiable
  EstimateStatus status;
};

// splitmix64 step; repeated application derives independent substreams from
// (seed, stream index) deterministically.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Requires nu >= 1, T_true > 0. Identical arguments give identical records.
ShotRecord simulate_shots(double t, double T_true, long nu, std::uint64_t seed,
                          const DerivedParams& d, const QuadratureSpec& q = {});

// Maximum-likelihood inversion: p_hat = n_plus/nu; p_hat <= 1/2 is
// Unidentifiable; otherwise gamma_hat = -ln(2 p_hat - 1) and T_hat solves
// Gamma(t, T_hat) = gamma_hat by bisection on [1 pK, 100 nK] (Gamma is
// monotone in T). Targets outside the bracket's Gamma range come back
// Clipped at the corresponding edge. Both are data outcomes, not faults.
EstimateRecord mle_temperature(const ShotRecord& rec, const DerivedParams& d,
                               const QuadratureSpec& q = {});

// Same inversion against a prebuilt table (shared across many estimates).
EstimateRecord mle_temperature(const ShotRecord& rec, const GammaTable& table);

inline constexpr double kMleBracketLow = 1e-12;  // 1 pK
inline constexpr double kMleBracketHigh = 1e-7;  // 100 nK

// trials independent estimates of T_true at encoding time t, one substream
// per trial; trial order never affects results.
std::vector<EstimateRecord> run_trials(double t, double T_true, long nu,
                                       long trials, std::uint64_t seed,
                                       const DerivedParams& d,
                                       const QuadratureSpec& q = {});

struct CrbRow {
  long nu;
  long trials;
  double mean_T_hat;          // mean over usable estimates [K]
  double rel_std;             // sample std of T_hat / T_true
  double crb_rel_error;       // theory line 1/sqrt(nu * Q_opt)
  double unidentifiable_frac;
};

// For each nu, run `trials` estimates at t_opt(T_true) and compare the
// empirical spread against the Cramer-Rao prediction. Requires trials >= 100.
std::vector<CrbRow> crb_study(double T_true, const std::vector<long>& nu_list,
                              long trials, std::uint64_t seed,
                              const DerivedParams& d,
                              const QuadratureSpec& q = {});

}  // namespace becthermo
