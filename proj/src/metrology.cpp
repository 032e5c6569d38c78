#include "becthermo/metrology.hpp"

#include <cmath>
#include <stdexcept>

namespace becthermo {

double bloch_qfi(const BlochVector& b) {
  const double w2 = b.w[0] * b.w[0] + b.w[1] * b.w[1] + b.w[2] * b.w[2];
  if (w2 > 1.0 + 1e-12) {
    throw std::invalid_argument("bloch_qfi: |w| must be <= 1");
  }
  const double dw2 = b.dw[0] * b.dw[0] + b.dw[1] * b.dw[1] + b.dw[2] * b.dw[2];
  if (1.0 - w2 < 1e-14) return dw2;  // pure branch, avoids 1-w^2 cancellation
  const double wdw = b.w[0] * b.dw[0] + b.w[1] * b.dw[1] + b.w[2] * b.dw[2];
  return dw2 + wdw * wdw / (1.0 - w2);
}

double dephasing_qfi(double gamma, double dgamma_dT) {
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("dephasing_qfi: gamma must be >= 0");
  }
  if (gamma == 0.0) {
    if (dgamma_dT != 0.0) {
      throw std::invalid_argument(
          "dephasing_qfi: gamma = 0 with nonzero dgamma is not a dephasing pair");
    }
    return 0.0;  // continuity limit at zero encoding time
  }
  return dgamma_dT * dgamma_dT / std::expm1(2.0 * gamma);
}

double fisher_of_observable(double mean, double var, double dmean_dT) {
  (void)mean;  // enters only through its derivative
  if (!(var > 0.0)) {
    throw std::invalid_argument(
        "fisher_of_observable: var must be > 0 (deterministic observable)");
  }
  return dmean_dT * dmean_dT / var;
}

SigmaXStats sigma_x_stats(double gamma) {
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("sigma_x_stats: gamma must be >= 0");
  }
  const double m = std::exp(-gamma);
  return {m, -std::expm1(-2.0 * gamma)};
}

EstimationReport estimation_report(double T, double qfi, long nu) {
  if (!(T > 0.0)) throw std::invalid_argument("estimation_report: T must be > 0");
  if (nu < 1) throw std::invalid_argument("estimation_report: nu must be >= 1");
  EstimationReport r;
  r.qfi = qfi;
  r.qsnr = T * T * qfi;
  r.rel_error_min = 1.0 / std::sqrt(static_cast<double>(nu) * r.qsnr);
  r.nu = nu;
  return r;
}

}  // namespace becthermo
