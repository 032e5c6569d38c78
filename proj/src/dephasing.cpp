#include "becthermo/dephasing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "becthermo/constants.hpp"
#include "becthermo/errors.hpp"
#include "quadrature.hpp"

namespace becthermo {

namespace {

using constants::hbar;
using constants::k_boltzmann;
using constants::pi;

constexpr double kInf = std::numeric_limits<double>::infinity();

// coth(y) and y*csch^2(y) for y > 0, stable for both tiny and huge y.
inline double coth_pos(double y) {
  return (1.0 + std::exp(-2.0 * y)) / (-std::expm1(-2.0 * y));
}
inline double ycsch2_pos(double y) {
  const double den = -std::expm1(-2.0 * y);
  return 4.0 * y * std::exp(-2.0 * y) / (den * den);
}

// Dimensionless integrand over ktil = ell_B * k. The temperature enters only
// through the coth factor (and its derivative partner), exactly as in the
// physical parameterization, so the second component is the analytic
// T-derivative: d(coth)/dT = (y/T) csch^2(y) with y = eps/(2 k_B T).
struct DimlessKernel {
  double P_t, alpha, sigma;
  double theta;   // sin^2 phase is theta * eps_til; theta = omega_B t / 4
  double inv2T;   // 1/(2 T_til)
  double upper;
  double k_soft;  // smallest feature scale to resolve near k = 0

  detail::PairVal operator()(double kt) const {
    const double k2 = kt * kt;
    const double s = k2 + 2.0 * alpha;
    const double eps = kt * std::sqrt(s);
    const double env = P_t * std::exp(-0.5 * sigma * sigma * k2) / (eps * s);
    const double sn = std::sin(theta * eps);
    const double base = env * sn * sn;
    const double y = eps * inv2T;
    return {base * coth_pos(y), base * ycsch2_pos(y)};
  }

  double eps_til(double kt) const { return kt * std::sqrt(kt * kt + 2.0 * alpha); }
  double base_factor(double kt) const {
    const double k2 = kt * kt;
    const double s = k2 + 2.0 * alpha;
    const double eps = kt * std::sqrt(s);
    const double sn = std::sin(theta * eps);
    return P_t * std::exp(-0.5 * sigma * sigma * k2) / (eps * s) * sn * sn;
  }

  double cap(double kt) const {
    const double deriv = 2.0 * (kt * kt + alpha) / std::sqrt(kt * kt + 2.0 * alpha);
    const double osc = (pi / 4.0) / (theta * deriv);
    const double smooth = std::clamp(0.5 * (kt + k_soft), upper * 1e-13, 0.7 / sigma);
    return std::min(osc, smooth);
  }

  double tail_bound(double kt) const {
    if (kt < 3.0 / sigma) return kInf;
    // envelope is decreasing here and sin^2 <= 1; Gaussian tail via erfc
    const double k2 = kt * kt;
    const double s = k2 + 2.0 * alpha;
    const double eps = kt * std::sqrt(s);
    const double pre = P_t * coth_pos(eps * inv2T) / (eps * s);
    const double gauss_tail =
        std::sqrt(pi / 2.0) / sigma * std::erfc(sigma * kt / std::sqrt(2.0));
    return pre * gauss_tail;
  }
};

// Same integral written in SI over k [1/m] (prefactor P, energies in J).
struct PhysicalKernel {
  double P, ng, m_B, ell_A;
  double half_t_over_hbar;  // sin^2 phase is eps * t/(2 hbar)
  double inv2kT;            // 1/(2 k_B T)
  double upper;
  double k_soft;

  double kinetic(double k) const { return hbar * hbar * k * k / (2.0 * m_B); }

  detail::PairVal operator()(double k) const {
    const double E = kinetic(k);
    const double s = E + 2.0 * ng;
    const double eps = std::sqrt(E * s);
    const double x = ell_A * k;
    const double env = P * std::exp(-0.5 * x * x) / (eps * s);
    const double sn = std::sin(half_t_over_hbar * eps);
    const double base = env * sn * sn;
    const double y = eps * inv2kT;
    return {base * coth_pos(y), base * ycsch2_pos(y)};
  }

  double cap(double k) const {
    const double E = kinetic(k);
    const double deriv =
        hbar / std::sqrt(2.0 * m_B) * (2.0 * E + 2.0 * ng) / std::sqrt(E + 2.0 * ng);
    const double osc = (pi / 4.0) / (half_t_over_hbar * deriv);
    const double smooth = std::clamp(0.5 * (k + k_soft), upper * 1e-13, 0.7 / ell_A);
    return std::min(osc, smooth);
  }

  double tail_bound(double k) const {
    if (k < 3.0 / ell_A) return kInf;
    const double E = kinetic(k);
    const double s = E + 2.0 * ng;
    const double eps = std::sqrt(E * s);
    const double pre = P * coth_pos(eps * inv2kT) / (eps * s);
    const double gauss_tail =
        std::sqrt(pi / 2.0) / ell_A * std::erfc(ell_A * k / std::sqrt(2.0));
    return pre * gauss_tail;
  }
};

DimlessKernel make_dimless_kernel(double t, double T, const DerivedParams& d,
                                  const QuadratureSpec& q, double T_feature) {
  const DimensionlessPoint pt = dimensionless(t, T, d);
  DimlessKernel ker;
  ker.P_t = d.P_tilde;
  ker.alpha = d.alpha;
  ker.sigma = d.config.sigma;
  ker.theta = d.config.omega_B * t / 4.0;  // = t_til/(2 T_til), T-independent
  ker.inv2T = 0.5 / pt.T_tilde;
  ker.upper = q.resolved_k_max(d.config.sigma);
  const double T_til_feat =
      2.0 * k_boltzmann * T_feature / (hbar * d.config.omega_B);
  ker.k_soft = std::min(2.0 * T_til_feat / std::sqrt(2.0 * d.alpha),
                        0.7 / d.config.sigma);
  return ker;
}

void validate_time_temp(double t, double T) {
  if (!(t >= 0.0)) throw std::invalid_argument("dephasing: t must be >= 0");
  if (!(T > 0.0)) throw std::invalid_argument("dephasing: T must be > 0");
}

// ln(sinh(x)/x) for x >= 0 without overflow: x + ln(1-e^{-2x}) - ln(2x).
double log_sinh_over_x(double x) {
  if (x == 0.0) return 0.0;
  if (x < 1e-3) {
    const double x2 = x * x;
    return x2 / 6.0 - x2 * x2 / 180.0;
  }
  return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0 * x);
}

// x*coth(x) - 1 for x >= 0, stable near 0.
double xcothx_minus_one(double x) {
  if (x == 0.0) return 0.0;
  if (x < 1e-3) {
    const double x2 = x * x;
    return x2 / 3.0 - x2 * x2 / 45.0;
  }
  const double e2 = std::exp(-2.0 * x);
  const double den = -std::expm1(-2.0 * x);
  return (x * (1.0 + e2) - den) / den;
}

}  // namespace

double QuadratureSpec::resolved_k_max(double sigma) const {
  return k_tilde_max > 0.0 ? k_tilde_max : 12.0 / sigma;
}

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  }
  if (max_panels < 1) {
    throw std::invalid_argument("QuadratureSpec: max_panels must be >= 1");
  }
}

GammaPair gamma_and_dgamma(double t, double T, const DerivedParams& d,
                           const QuadratureSpec& q) {
  validate_time_temp(t, T);
  q.validate();
  if (t == 0.0) return {0.0, 0.0};

  const DimlessKernel ker = make_dimless_kernel(t, T, d, q, T);
  const auto res = detail::integrate_marching(
      ker, [&](double k) { return ker.cap(k); },
      [&](double k) { return ker.tail_bound(k); }, ker.upper, q.rel_tol,
      q.abs_tol, q.max_panels);
  return {res.ig, res.id / T};
}

double gamma_numeric(double t, double T, const DerivedParams& d,
                     const QuadratureSpec& q, GammaForm form) {
  validate_time_temp(t, T);
  q.validate();
  if (t == 0.0) return 0.0;
  if (form == GammaForm::Dimensionless) return gamma_and_dgamma(t, T, d, q).gamma;

  PhysicalKernel ker;
  ker.P = d.P;
  ker.ng = d.config.n * d.g_B;
  ker.m_B = d.config.m_B;
  ker.ell_A = d.ell_A;
  ker.half_t_over_hbar = 0.5 * t / hbar;
  ker.inv2kT = 0.5 / (k_boltzmann * T);
  ker.upper = q.resolved_k_max(d.config.sigma) / d.ell_B;
  ker.k_soft = std::min(2.0 * k_boltzmann * T / (hbar * d.c_s), 0.7 / d.ell_A);
  const auto res = detail::integrate_marching(
      ker, [&](double k) { return ker.cap(k); },
      [&](double k) { return ker.tail_bound(k); }, ker.upper, q.rel_tol,
      q.abs_tol, q.max_panels);
  return res.ig;
}

double dgamma_dT_numeric(double t, double T, const DerivedParams& d,
                         const QuadratureSpec& q) {
  return gamma_and_dgamma(t, T, d, q).dgamma_dT;
}

double gamma_ohmic(double t, double T, const DerivedParams& d) {
  validate_time_temp(t, T);
  if (t == 0.0) return 0.0;
  const double omega_T = k_boltzmann * T / hbar;
  const double wct = d.omega_c * t;
  return 0.5 * d.eta * std::log1p(wct * wct) +
         d.eta * log_sinh_over_x(pi * omega_T * t);
}

double dgamma_ohmic_dT(double t, double T, const DerivedParams& d) {
  validate_time_temp(t, T);
  if (t == 0.0) return 0.0;
  const double omega_T = k_boltzmann * T / hbar;
  return d.eta / T * xcothx_minus_one(pi * omega_T * t);
}

bool ohmic_regime_ok(double T, const DerivedParams& d) {
  if (!(T > 0.0)) throw std::invalid_argument("ohmic_regime_ok: T must be > 0");
  return d.omega_c / (k_boltzmann * T / hbar) > 10.0;
}

double gamma_integrand_zero_limit(double t, double T, const DerivedParams& d) {
  validate_time_temp(t, T);
  const DimensionlessPoint pt = dimensionless(t, T, d);
  return d.P_tilde * pt.t_tilde * pt.t_tilde / (4.0 * d.alpha * pt.T_tilde);
}

ProbeState probe_state(double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("probe_state: gamma must be >= 0");
  const double w = std::exp(-gamma);
  return {gamma, {w, 0.0, 0.0}, 0.5 * w};
}

GammaTable::GammaTable(double t, const DerivedParams& d, const QuadratureSpec& q,
                       double T_floor)
    : t_(t) {
  if (!(t >= 0.0)) throw std::invalid_argument("GammaTable: t must be >= 0");
  if (!(T_floor > 0.0)) throw std::invalid_argument("GammaTable: T_floor must be > 0");
  q.validate();
  if (t == 0.0) return;  // Gamma(0, T) = 0 for every T

  // Panels are shaped at T_floor so evaluations stay valid for any T above
  // it; the coth feature only widens as T grows.
  const DimlessKernel ker = make_dimless_kernel(t, T_floor, d, q, T_floor);
  std::vector<double> xs, ws;
  detail::NodeSink sink{&xs, &ws};
  detail::integrate_marching(
      ker, [&](double k) { return ker.cap(k); },
      [&](double k) { return ker.tail_bound(k); }, ker.upper, q.rel_tol,
      q.abs_tol, q.max_panels, sink);

  wbase_.resize(xs.size());
  escale_.resize(xs.size());
  const double eps_to_escale = hbar * d.config.omega_B / (4.0 * k_boltzmann);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    wbase_[i] = ws[i] * ker.base_factor(xs[i]);
    escale_[i] = ker.eps_til(xs[i]) * eps_to_escale;  // coth arg = escale/T
  }
}

double GammaTable::gamma(double T) const {
  if (!(T > 0.0)) throw std::invalid_argument("GammaTable: T must be > 0");
  detail::KahanSum acc;
  for (std::size_t i = 0; i < wbase_.size(); ++i) {
    acc.add(wbase_[i] * coth_pos(escale_[i] / T));
  }
  return acc.s;
}

double GammaTable::dgamma_dT(double T) const {
  if (!(T > 0.0)) throw std::invalid_argument("GammaTable: T must be > 0");
  detail::KahanSum acc;
  for (std::size_t i = 0; i < wbase_.size(); ++i) {
    acc.add(wbase_[i] * ycsch2_pos(escale_[i] / T));
  }
  return acc.s / T;
}

}  // namespace becthermo
