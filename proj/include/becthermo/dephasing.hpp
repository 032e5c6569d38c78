#pragma once

#include <array>
#include <vector>

#include "becthermo/params.hpp"

namespace becthermo {

// Controls for the oscillatory dephasing quadrature.
//
// The integrand is a positive envelope times sin^2 of a phase that grows with
// encoding time, so the integrator marches panels whose width is capped at a
// quarter period of the local oscillation and bisects each panel adaptively
// until the tolerances hold.
struct QuadratureSpec {
  double k_tilde_max = 0.0;  // cutoff in ell_B*k; 0 = auto (12/sigma, Gaussian weight < 1e-12)
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  long max_panels = 10'000'000;  // panel budget before reporting non-convergence

  double resolved_k_max(double sigma) const;  // k_tilde_max or the default
  void validate() const;                      // tolerances must be positive
};

enum class GammaForm {
  Dimensionless,  // integrate over ell_B*k with the dimensionless prefactor
  Physical,       // integrate over k in SI with the physical prefactor
};

// Dephasing exponent Gamma(t, T) by adaptive quadrature. Requires t >= 0,
// T > 0. The two parameterizations are algebraically identical; both are
// exposed so tests can cross-check them. Throws ConvergenceError if the panel
// budget runs out.
double gamma_numeric(double t, double T, const DerivedParams& d,
                     const QuadratureSpec& q = {},
                     GammaForm form = GammaForm::Dimensionless);

// dGamma/dT [1/K] by differentiating under the integral: the temperature
// enters only through coth(eps/(2 k_B T)), whose exact T-derivative is
// (eps/(2 k_B T^2)) csch^2(eps/(2 k_B T)).
double dgamma_dT_numeric(double t, double T, const DerivedParams& d,
                         const QuadratureSpec& q = {});

struct GammaPair {
  double gamma;      // dimensionless
  double dgamma_dT;  // [1/K]
};

// Both integrals in one quadrature pass (they share panels and envelope).
GammaPair gamma_and_dgamma(double t, double T, const DerivedParams& d,
                           const QuadratureSpec& q = {});

// Closed-form dephasing exponent for the standard Ohmic spectral density with
// exponential cutoff, valid for omega_c/omega_T >> 1. Evaluated in log domain
// so large pi*omega_T*t never overflows.
double gamma_ohmic(double t, double T, const DerivedParams& d);

// d(gamma_ohmic)/dT = (eta/T) [pi omega_T t coth(pi omega_T t) - 1]  [1/K]
double dgamma_ohmic_dT(double t, double T, const DerivedParams& d);

// The closed form above assumes omega_c/omega_T >> 1; false when the ratio
// is <= 10.
bool ohmic_regime_ok(double T, const DerivedParams& d);

// Analytic k->0 limit of the dimensionless integrand, P~ t~^2/(4 alpha T~).
// The integrand is finite there; endpoint-evaluating schemes must use this
// instead of the raw 0/0 expression.
double gamma_integrand_zero_limit(double t, double T, const DerivedParams& d);

// Probe qubit state after accumulating dephasing exponent gamma.
struct ProbeState {
  double gamma;                  // >= 0
  std::array<double, 3> bloch;   // (e^-gamma, 0, 0)
  double coherence;              // |rho_eg| = e^-gamma / 2
};

ProbeState probe_state(double gamma);

// Reusable quadrature for a fixed encoding time: the panel/node set is built
// once and Gamma(T), dGamma/dT(T) become cheap sums over precomputed nodes.
// Panels resolve the coth feature down to T_floor, so evaluations are valid
// for any T >= T_floor. Used by the Monte Carlo inversion, where one t is
// probed at many temperatures.
class GammaTable {
 public:
  GammaTable(double t, const DerivedParams& d, const QuadratureSpec& q = {},
             double T_floor = 1e-12);

  double gamma(double T) const;
  double dgamma_dT(double T) const;
  double encoding_time() const { return t_; }
  std::size_t node_count() const { return wbase_.size(); }

 private:
  double t_;
  std::vector<double> wbase_;   // weight x T-independent integrand factor
  std::vector<double> escale_;  // coth argument is escale / T
};

}  // namespace becthermo
