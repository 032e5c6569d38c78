#pragma once

#include "becthermo/dephasing.hpp"
#include "becthermo/params.hpp"

namespace becthermo {

enum class GammaSource {
  NumericGamma,  // adaptive quadrature of the exact integral
  OhmicGamma,    // closed-form Ohmic approximation
};

enum class OptMethod { Numeric, Transcendental, Series };

struct OptimalPoint {
  double t_opt;          // [s]
  double omega_T_t_opt;  // dimensionless encoding time
  double q_opt;          // QSNR at t_opt
  OptMethod method;
  // For Transcendental/Series: the asymptotic conditions omega_c*t >> 1 and
  // pi*omega_T*t >> 1 behind the closed forms; false when omega_c*t <= 10 or
  // pi*omega_T*t <= 3. Always true for Numeric.
  bool asymptotics_ok;
};

// QSNR at encoding time t [s]; 0 at t = 0 by continuity.
double qsnr_at(double t, double T, const DerivedParams& d, GammaSource source,
               const QuadratureSpec& q = {});

// Maximize the QSNR over t: geometric bracket scan (factor 1.5) over
// omega_T*t in [0.1, 200], then golden-section refinement to rel tol 1e-6.
// Throws ConvergenceError if the QSNR is still rising at the bracket ceiling.
OptimalPoint find_topt_numeric(double T, const DerivedParams& d,
                               GammaSource source = GammaSource::NumericGamma,
                               const QuadratureSpec& q = {});

// Optimal time from the transcendental stationarity condition of the Ohmic
// QSNR: x = (1/(pi eta)) (1 - zeta_T^{-2 eta} e^{-2 pi eta x}) with
// zeta_T = omega_c/(2 pi omega_T), solved by damped fixed-point iteration
// from x0 = 1/(pi eta). Requires eta < 0.5.
OptimalPoint solve_topt_transcendental(double T, const DerivedParams& d);

// z(T) = e^-2 (2 pi k_B T/(hbar omega_c))^{2 eta}; requires the ratio < 1.
double z_of_T(double T, const DerivedParams& d);

// Temperature-independent series estimate of omega_T*t_opt,
// (1/(pi eta)) [1 - z(T0) - 2 z(T0)^2], expanded at T0 (default 0.5 nK).
double approx_R(const DerivedParams& d, double T0 = 0.5e-9);

struct SeriesQopt {
  double value;    // (1-2 eta) z + (1-4 eta) z^2 + 2 (1-6 eta) z^3
  bool series_ok;  // z < 0.3
};

// Cubic-in-z series for the optimal QSNR.
SeriesQopt approx_qopt(double T, const DerivedParams& d);

// Weak-coupling limit of the optimal QSNR: 1/e^2 + 1/e^4 + 2/e^6 ~ 0.1586.
double qsnr_upper_bound();

}  // namespace becthermo
