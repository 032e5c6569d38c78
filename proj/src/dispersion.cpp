#include "becthermo/dispersion.hpp"

#include <cmath>
#include <stdexcept>

#include "becthermo/constants.hpp"

namespace becthermo {

double epsilon(double k, const DerivedParams& d) {
  if (!(k >= 0.0)) throw std::invalid_argument("epsilon: k must be >= 0");
  const double E_k =
      constants::hbar * constants::hbar * k * k / (2.0 * d.config.m_B);
  return std::sqrt(E_k * (E_k + 2.0 * d.config.n * d.g_B));
}

Mode mode_at(double k, const DerivedParams& d) {
  if (!(k >= 0.0)) throw std::invalid_argument("mode_at: k must be >= 0");
  Mode m;
  m.k = k;
  m.E_k = constants::hbar * constants::hbar * k * k / (2.0 * d.config.m_B);
  m.eps_k = std::sqrt(m.E_k * (m.E_k + 2.0 * d.config.n * d.g_B));
  return m;
}

double coupling_gk(double k, double L, const DerivedParams& d) {
  if (!(L > 0.0)) throw std::invalid_argument("coupling_gk: L must be > 0");
  if (!(k >= 0.0)) throw std::invalid_argument("coupling_gk: k must be >= 0");
  if (k == 0.0) return 0.0;  // k->0+ limit: E_k/eps_k -> 0
  const Mode m = mode_at(k, d);
  const double x = d.ell_A * k;
  return constants::hbar * d.delta_e / std::sqrt(d.config.n * L) *
         std::sqrt(m.E_k / m.eps_k) * std::exp(-x * x / 4.0);
}

double spectral_density(double omega, const DerivedParams& d, CutoffShape shape) {
  if (!(omega >= 0.0)) {
    throw std::invalid_argument("spectral_density: omega must be >= 0");
  }
  const double r = omega / d.omega_c;
  switch (shape) {
    case CutoffShape::Gaussian:
      return d.eta * omega * std::exp(-r * r);
    case CutoffShape::Exponential:
      return d.eta * omega * std::exp(-r);
  }
  throw std::logic_error("spectral_density: bad shape");
}

}  // namespace becthermo
