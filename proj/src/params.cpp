#include "becthermo/params.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "becthermo/constants.hpp"
#include "becthermo/errors.hpp"

namespace becthermo {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("PhysicalConfig: ") + name +
                                " must be positive and finite");
  }
}

}  // namespace

void PhysicalConfig::validate() const {
  require_positive(m_A, "m_A");
  require_positive(m_B, "m_B");
  require_positive(omega_B, "omega_B");
  require_positive(n, "n");
  require_positive(a_B, "a_B");
  require_positive(a_AB, "a_AB");
  require_positive(sigma, "sigma");
  if (!(n * a_B < 1.0)) {
    throw std::invalid_argument(
        "PhysicalConfig: n*a_B must be < 1 (quasi-1D weak-interaction regime)");
  }
}

PhysicalConfig PhysicalConfig::baseline() {
  PhysicalConfig c;
  c.m_A = 3.82e-26;                         // Na-23
  c.m_B = 14.45e-26;                        // Rb-87
  c.omega_B = 2.0 * constants::pi * 1.0e3;  // 2 pi x 1 kHz
  c.n = 3.6e7;                              // 3.6e5 cm^-1
  c.a_B = 5.3e-9;
  c.a_AB = 2.9e-9;                          // ~55 Bohr radii
  c.sigma = 0.5;
  return c;
}

PhysicalConfig PhysicalConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);

  std::map<std::string, double> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;  // blank or comment-only
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": expected key=value");
    }
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) {
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": expected key=value");
    }
    std::size_t used = 0;
    double parsed = 0.0;
    try {
      parsed = std::stod(val, &used);
    } catch (const std::exception&) {
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": cannot parse value '" + val + "'");
    }
    if (used != val.size()) {
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": trailing characters after number '" + val + "'");
    }
    if (values.count(key)) {
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": duplicate key '" + key + "'");
    }
    values[key] = parsed;
  }

  static const char* const kKeys[] = {"m_A_kg", "m_B_kg", "omega_B_rad_s",
                                      "n_per_m", "a_B_m", "a_AB_m", "sigma"};
  for (const char* key : kKeys) {
    if (!values.count(key)) {
      throw UsageError(path + ": missing key '" + std::string(key) + "'");
    }
  }
  for (const auto& [key, _] : values) {
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) throw UsageError(path + ": unknown key '" + key + "'");
  }

  PhysicalConfig c;
  c.m_A = values["m_A_kg"];
  c.m_B = values["m_B_kg"];
  c.omega_B = values["omega_B_rad_s"];
  c.n = values["n_per_m"];
  c.a_B = values["a_B_m"];
  c.a_AB = values["a_AB_m"];
  c.sigma = values["sigma"];
  c.validate();
  return c;
}

DerivedParams derive(const PhysicalConfig& config) {
  config.validate();
  using constants::hbar;
  using constants::pi;

  DerivedParams d;
  d.config = config;
  d.ell_B = std::sqrt(hbar / (config.m_B * config.omega_B));
  d.ell_A = config.sigma * d.ell_B;
  d.g_B = 2.0 * hbar * hbar * config.a_B / (config.m_B * d.ell_B * d.ell_B);
  d.m_AB = config.m_A * config.m_B / (config.m_A + config.m_B);

  const double ell2 = d.ell_A * d.ell_A + d.ell_B * d.ell_B;
  d.delta_e = 2.0 * hbar * config.n * config.a_AB / (d.m_AB * ell2);

  d.c_s = std::sqrt(config.n * d.g_B / config.m_B);
  d.omega_c = std::sqrt(2.0) * d.c_s / d.ell_A;
  d.xi = hbar / std::sqrt(config.m_B * config.n * d.g_B);

  const double aAB2 = config.a_AB * config.a_AB;
  d.P = 8.0 * config.n * hbar * hbar * hbar * hbar * aAB2 /
        (pi * d.m_AB * d.m_AB * ell2 * ell2);

  const double mass_ratio2 = (config.m_A + config.m_B) * (config.m_A + config.m_B) /
                             (config.m_A * config.m_A);
  const double s2 = 1.0 + config.sigma * config.sigma;
  d.P_tilde = 32.0 * config.n * aAB2 * mass_ratio2 / (pi * d.ell_B * s2 * s2);

  d.alpha = 4.0 * config.n * config.a_B;
  d.eta = config.n * aAB2 * d.ell_B * d.ell_B * d.ell_B * mass_ratio2 /
          (std::sqrt(2.0) * pi * ell2 * ell2) *
          std::pow(1.0 / (config.n * config.a_B), 1.5);
  return d;
}

DimensionlessPoint dimensionless(double t, double T, const DerivedParams& d) {
  if (!(t >= 0.0)) throw std::invalid_argument("dimensionless: t must be >= 0");
  if (!(T > 0.0)) throw std::invalid_argument("dimensionless: T must be > 0");
  DimensionlessPoint p;
  p.omega_T = constants::k_boltzmann * T / constants::hbar;
  p.t_tilde = p.omega_T * t;
  p.T_tilde = 2.0 * constants::k_boltzmann * T / (constants::hbar * d.config.omega_B);
  return p;
}

}  // namespace becthermo
