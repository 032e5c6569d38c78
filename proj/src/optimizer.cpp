#include "becthermo/optimizer.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "becthermo/constants.hpp"
#include "becthermo/errors.hpp"

namespace becthermo {

namespace {

using constants::hbar;
using constants::k_boltzmann;
using constants::pi;

constexpr double kBracketLo = 0.1;    // omega_T * t scan window
constexpr double kBracketHi = 200.0;
constexpr double kBracketFactor = 1.5;

bool asymptotics_hold(double t, double omega_T, double omega_c) {
  return omega_c * t > 10.0 && pi * omega_T * t > 3.0;
}

}  // namespace

double qsnr_at(double t, double T, const DerivedParams& d, GammaSource source,
               const QuadratureSpec& q) {
  if (!(t >= 0.0)) throw std::invalid_argument("qsnr_at: t must be >= 0");
  if (!(T > 0.0)) throw std::invalid_argument("qsnr_at: T must be > 0");
  if (t == 0.0) return 0.0;
  GammaPair gp;
  if (source == GammaSource::NumericGamma) {
    gp = gamma_and_dgamma(t, T, d, q);
  } else {
    gp = {gamma_ohmic(t, T, d), dgamma_ohmic_dT(t, T, d)};
  }
  if (gp.gamma <= 0.0) return 0.0;
  const double num = T * gp.dgamma_dT;
  return num * num / std::expm1(2.0 * gp.gamma);
}

OptimalPoint find_topt_numeric(double T, const DerivedParams& d,
                               GammaSource source, const QuadratureSpec& q) {
  if (!(T > 0.0)) throw std::invalid_argument("find_topt_numeric: T must be > 0");
  const double omega_T = k_boltzmann * T / hbar;
  auto qsnr_x = [&](double x) { return qsnr_at(x / omega_T, T, d, source, q); };

  // geometric ladder over omega_T*t
  std::vector<double> xs;
  for (double x = kBracketLo; x < kBracketHi; x *= kBracketFactor) xs.push_back(x);
  xs.push_back(kBracketHi);
  std::vector<double> qs(xs.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    qs[i] = qsnr_x(xs[i]);
    if (qs[i] > qs[best]) best = i;
  }
  if (best + 1 == xs.size() && qs[best] > qs[best - 1]) {
    throw ConvergenceError(
        "find_topt_numeric: QSNR still increasing at omega_T*t = 200");
  }

  double lo = best == 0 ? xs[0] / kBracketFactor : xs[best - 1];
  double hi = best + 1 < xs.size() ? xs[best + 1] : xs[best];

  // golden-section refinement
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = qsnr_x(x1);
  double f2 = qsnr_x(x2);
  while (hi - lo > 1e-6 * 0.5 * (lo + hi)) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = qsnr_x(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = qsnr_x(x1);
    }
  }
  const double xbest = f1 > f2 ? x1 : x2;
  const double qbest = f1 > f2 ? f1 : f2;
  return {xbest / omega_T, xbest, qbest, OptMethod::Numeric, true};
}

OptimalPoint solve_topt_transcendental(double T, const DerivedParams& d) {
  if (!(T > 0.0)) {
    throw std::invalid_argument("solve_topt_transcendental: T must be > 0");
  }
  if (!(d.eta > 0.0 && d.eta < 0.5)) {
    throw std::invalid_argument("solve_topt_transcendental: requires 0 < eta < 0.5");
  }
  const double omega_T = k_boltzmann * T / hbar;
  const double zeta = d.omega_c / (2.0 * pi * omega_T);
  const double pe = pi * d.eta;
  const double c = std::pow(zeta, -2.0 * d.eta);

  double x = 1.0 / pe;
  double prev_dx = 0.0;
  bool damped = false;
  bool converged = false;
  for (int it = 0; it < 1000; ++it) {
    const double target = (1.0 - c * std::exp(-2.0 * pe * x)) / pe;
    double dx = target - x;
    if (it > 0 && dx * prev_dx < 0.0) damped = true;  // oscillating map
    if (damped) dx *= 0.5;
    x += dx;
    prev_dx = dx;
    if (std::abs(dx) <= 1e-10 * std::abs(x)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError("solve_topt_transcendental: fixed point did not converge");
  }
  const double t_opt = x / omega_T;
  return {t_opt, x, qsnr_at(t_opt, T, d, GammaSource::OhmicGamma),
          OptMethod::Transcendental, asymptotics_hold(t_opt, omega_T, d.omega_c)};
}

double z_of_T(double T, const DerivedParams& d) {
  if (!(T > 0.0)) throw std::invalid_argument("z_of_T: T must be > 0");
  const double ratio = 2.0 * pi * k_boltzmann * T / (hbar * d.omega_c);
  if (!(ratio < 1.0)) {
    throw std::invalid_argument(
        "z_of_T: 2 pi k_B T / (hbar omega_c) must be < 1 (low-T regime)");
  }
  return std::exp(-2.0) * std::pow(ratio, 2.0 * d.eta);
}

double approx_R(const DerivedParams& d, double T0) {
  const double z = z_of_T(T0, d);
  return (1.0 - z - 2.0 * z * z) / (pi * d.eta);
}

SeriesQopt approx_qopt(double T, const DerivedParams& d) {
  const double z = z_of_T(T, d);
  const double e = d.eta;
  const double value =
      (1.0 - 2.0 * e) * z + (1.0 - 4.0 * e) * z * z + 2.0 * (1.0 - 6.0 * e) * z * z * z;
  return {value, z < 0.3};
}

double qsnr_upper_bound() {
  return std::exp(-2.0) + std::exp(-4.0) + 2.0 * std::exp(-6.0);
}

}  // namespace becthermo
