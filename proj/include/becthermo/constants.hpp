#pragma once

#include <numbers>

namespace becthermo::constants {

// CODATA 2018, SI units.
inline constexpr double hbar = 1.054571817e-34;        // reduced Planck constant [J s]
inline constexpr double k_boltzmann = 1.380649e-23;    // Boltzmann constant [J/K] (exact)
inline constexpr double bohr_radius = 5.29177210903e-11;  // [m]
inline constexpr double pi = std::numbers::pi_v<double>;

}  // namespace becthermo::constants
