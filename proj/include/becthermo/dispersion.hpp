#pragma once

#include "becthermo/params.hpp"

namespace becthermo {

// One excitation mode of the condensate.
struct Mode {
  double k;      // wavenumber [1/m]
  double E_k;    // free kinetic energy hbar^2 k^2/(2 m_B) [J]
  double eps_k;  // Bogoliubov energy sqrt(E_k^2 + 2 n g_B E_k) [J]
};

// Bogoliubov excitation energy; requires k >= 0, gapless at k = 0.
double epsilon(double k, const DerivedParams& d);

Mode mode_at(double k, const DerivedParams& d);

// Sensor-reservoir coupling for quantization length L [J].
// g(0) is defined as the k->0+ limit, which is 0.
double coupling_gk(double k, double L, const DerivedParams& d);

enum class CutoffShape {
  Gaussian,     // eta * w * exp(-(w/w_c)^2)  (phonon-approximation result)
  Exponential,  // eta * w * exp(-w/w_c)      (standard Ohmic form)
};

// Effective reservoir spectral density J(omega) [rad/s]; requires omega >= 0.
double spectral_density(double omega, const DerivedParams& d,
                        CutoffShape shape = CutoffShape::Gaussian);

}  // namespace becthermo
