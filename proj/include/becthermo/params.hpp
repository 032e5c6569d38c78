#pragma once

#include <string>

namespace becthermo {

// Experimental inputs, SI units throughout. Unit handling for nK/nm lives at
// the CLI boundary; the core never sees anything but SI.
struct PhysicalConfig {
  double m_A;      // impurity atom mass [kg]
  double m_B;      // condensate atom mass [kg]
  double omega_B;  // transverse trap frequency of the condensate [rad/s]
  double n;        // condensate line density [1/m]
  double a_B;      // condensate s-wave scattering length [m]
  double a_AB;     // impurity-condensate scattering length [m]
  double sigma;    // oscillator width ratio ell_A / ell_B

  // Throws std::invalid_argument unless all fields are positive and the
  // quasi-1D weak-interaction condition n*a_B < 1 holds.
  void validate() const;

  // Na-23 impurity in a quasi-1D Rb-87 condensate: the parameter set behind
  // every reference number in this project.
  static PhysicalConfig baseline();

  // Plain-text key=value file, '#' starts a comment. Required keys:
  // m_A_kg, m_B_kg, omega_B_rad_s, n_per_m, a_B_m, a_AB_m, sigma.
  static PhysicalConfig from_file(const std::string& path);
};

// Every derived quantity the model equations use, computed once by derive().
struct DerivedParams {
  PhysicalConfig config;

  double ell_B;    // condensate oscillator width sqrt(hbar/(m_B omega_B)) [m]
  double ell_A;    // impurity oscillator width sigma*ell_B [m]
  double g_B;      // 1D coupling constant 2 hbar^2 a_B/(m_B ell_B^2) [J m]
  double m_AB;     // reduced mass m_A m_B/(m_A+m_B) [kg]
  double delta_e;  // collisional level shift of |e>, as angular frequency [rad/s]
  double c_s;      // sound speed sqrt(n g_B/m_B) [m/s]
  double omega_c;  // spectral cutoff sqrt(2) c_s/ell_A [rad/s]
  double xi;       // healing length hbar/sqrt(m_B n g_B) [m]
  double P;        // dephasing-integral prefactor, physical form [J^2 m]
  double P_tilde;  // dephasing-integral prefactor, dimensionless form
  double alpha;    // 4 n a_B
  double eta;      // dimensionless reservoir coupling (scales as a_AB^2)
};

// Pure function of the config; throws if the config is invalid.
DerivedParams derive(const PhysicalConfig& config);

struct DimensionlessPoint {
  double t_tilde;  // omega_T * t
  double T_tilde;  // 2 k_B T / (hbar omega_B)
  double omega_T;  // k_B T / hbar [rad/s]
};

// Requires t >= 0 and T > 0.
DimensionlessPoint dimensionless(double t, double T, const DerivedParams& d);

}  // namespace becthermo
