#include "becthermo/ramsey_mc.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "becthermo/optimizer.hpp"
#include "parallel.hpp"

namespace becthermo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

long sample_binomial(long nu, double p_plus, std::uint64_t stream_seed) {
  std::mt19937_64 rng(stream_seed);
  long n_plus = 0;
  for (long i = 0; i < nu; ++i) {
    if (uniform53(rng) < p_plus) ++n_plus;
  }
  return n_plus;
}

void validate_record(const ShotRecord& rec) {
  if (rec.nu < 1) throw std::invalid_argument("ShotRecord: nu must be >= 1");
  if (rec.n_plus < 0 || rec.n_plus > rec.nu) {
    throw std::invalid_argument("ShotRecord: n_plus must be in [0, nu]");
  }
  if (!(rec.t >= 0.0)) throw std::invalid_argument("ShotRecord: t must be >= 0");
}

std::vector<EstimateRecord> run_trials_with_table(
    const GammaTable& table, double T_true, long nu, long trials,
    std::uint64_t seed, std::uint64_t stream_base) {
  const double gamma_true = table.gamma(T_true);
  const double p_plus = 0.5 * (1.0 + std::exp(-gamma_true));
  std::vector<EstimateRecord> out(static_cast<std::size_t>(trials));
  detail::parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
    const std::uint64_t stream = mix_seed(seed, stream_base + i);
    ShotRecord rec{table.encoding_time(), nu, sample_binomial(nu, p_plus, stream),
                   stream};
    out[i] = mle_temperature(rec, table);
  });
  return out;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ShotRecord simulate_shots(double t, double T_true, long nu, std::uint64_t seed,
                          const DerivedParams& d, const QuadratureSpec& q) {
  if (nu < 1) throw std::invalid_argument("simulate_shots: nu must be >= 1");
  if (!(T_true > 0.0)) throw std::invalid_argument("simulate_shots: T_true must be > 0");
  const double gamma = gamma_numeric(t, T_true, d, q);
  const double p_plus = 0.5 * (1.0 + std::exp(-gamma));
  return {t, nu, sample_binomial(nu, p_plus, mix_seed(seed, 0)), seed};
}

EstimateRecord mle_temperature(const ShotRecord& rec, const GammaTable& table) {
  validate_record(rec);
  if (rec.t != table.encoding_time()) {
    throw std::invalid_argument(
        "mle_temperature: table was prepared for a different encoding time");
  }
  const double p_hat =
      static_cast<double>(rec.n_plus) / static_cast<double>(rec.nu);
  if (p_hat <= 0.5) return {kNaN, kNaN, EstimateStatus::Unidentifiable};
  const double gamma_hat = -std::log(2.0 * p_hat - 1.0);

  const double g_lo = table.gamma(kMleBracketLow);
  const double g_hi = table.gamma(kMleBracketHigh);
  // Gamma(t, .) is monotone increasing in T
  if (gamma_hat <= g_lo) return {kMleBracketLow, gamma_hat, EstimateStatus::Clipped};
  if (gamma_hat >= g_hi) return {kMleBracketHigh, gamma_hat, EstimateStatus::Clipped};

  double lo = kMleBracketLow, hi = kMleBracketHigh;
  for (int it = 0; it < 200 && hi - lo > 1e-9 * (0.5 * (lo + hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (table.gamma(mid) < gamma_hat ? lo : hi) = mid;
  }
  return {0.5 * (lo + hi), gamma_hat, EstimateStatus::Ok};
}

EstimateRecord mle_temperature(const ShotRecord& rec, const DerivedParams& d,
                               const QuadratureSpec& q) {
  validate_record(rec);
  const GammaTable table(rec.t, d, q, kMleBracketLow);
  return mle_temperature(rec, table);
}

std::vector<EstimateRecord> run_trials(double t, double T_true, long nu,
                                       long trials, std::uint64_t seed,
                                       const DerivedParams& d,
                                       const QuadratureSpec& q) {
  if (trials < 1) throw std::invalid_argument("run_trials: trials must be >= 1");
  if (nu < 1) throw std::invalid_argument("run_trials: nu must be >= 1");
  if (!(T_true > 0.0)) throw std::invalid_argument("run_trials: T_true must be > 0");
  const GammaTable table(t, d, q, kMleBracketLow);
  return run_trials_with_table(table, T_true, nu, trials, seed, 0);
}

std::vector<CrbRow> crb_study(double T_true, const std::vector<long>& nu_list,
                              long trials, std::uint64_t seed,
                              const DerivedParams& d, const QuadratureSpec& q) {
  if (trials < 100) throw std::invalid_argument("crb_study: trials must be >= 100");
  for (long nu : nu_list) {
    if (nu < 1) throw std::invalid_argument("crb_study: every nu must be >= 1");
  }

  const OptimalPoint opt = find_topt_numeric(T_true, d, GammaSource::NumericGamma, q);
  const GammaTable table(opt.t_opt, d, q, kMleBracketLow);

  std::vector<CrbRow> rows;
  rows.reserve(nu_list.size());
  for (std::size_t idx = 0; idx < nu_list.size(); ++idx) {
    const long nu = nu_list[idx];
    // substream block per nu so adding a nu never reshuffles earlier rows
    const std::uint64_t base = static_cast<std::uint64_t>(idx) << 32;
    const auto recs = run_trials_with_table(table, T_true, nu, trials, seed, base);

    long unident = 0;
    double sum = 0.0, sum2 = 0.0;
    long used = 0;
    for (const auto& r : recs) {
      if (r.status == EstimateStatus::Unidentifiable) {
        ++unident;
        continue;  // excluded from the error statistics, reported as a fraction
      }
      sum += r.T_hat;
      sum2 += r.T_hat * r.T_hat;
      ++used;
    }
    CrbRow row;
    row.nu = nu;
    row.trials = trials;
    row.unidentifiable_frac =
        static_cast<double>(unident) / static_cast<double>(trials);
    row.crb_rel_error = 1.0 / std::sqrt(static_cast<double>(nu) * opt.q_opt);
    if (used >= 1) {
      row.mean_T_hat = sum / static_cast<double>(used);
      row.rel_std = used >= 2
                        ? std::sqrt((sum2 - sum * sum / used) / (used - 1)) / T_true
                        : kNaN;
    } else {
      row.mean_T_hat = kNaN;
      row.rel_std = kNaN;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace becthermo
