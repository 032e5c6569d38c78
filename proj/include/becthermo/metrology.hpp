#pragma once

#include <array>

namespace becthermo {

// Qubit state and its parameter derivative in Bloch form.
struct BlochVector {
  std::array<double, 3> w;   // |w| <= 1
  std::array<double, 3> dw;  // d w / d theta
};

// Quantum Fisher information of a qubit family w(theta):
//   |dw|^2                          for pure states (|w| = 1)
//   |dw|^2 + (w.dw)^2/(1 - |w|^2)   otherwise
// States within 1e-14 of pure are routed to the pure branch to avoid
// catastrophic cancellation in 1 - |w|^2.
double bloch_qfi(const BlochVector& b);

// QFI of the dephasing channel, (dgamma)^2 / (e^{2 gamma} - 1) [1/K^2].
// gamma = 0 requires dgamma = 0 and returns the continuity limit 0.
double dephasing_qfi(double gamma, double dgamma_dT);

// Classical Fisher information of a measured observable [1/K^2]; var > 0.
double fisher_of_observable(double mean, double var, double dmean_dT);

struct SigmaXStats {
  double mean;  // <sigma_x> = e^-gamma
  double var;   // 1 - e^{-2 gamma}
};

SigmaXStats sigma_x_stats(double gamma);

struct EstimationReport {
  double qfi;            // [1/K^2]
  double qsnr;           // T^2 * qfi
  double rel_error_min;  // 1/sqrt(nu * qsnr)
  long nu;
};

EstimationReport estimation_report(double T, double qfi, long nu);

}  // namespace becthermo
