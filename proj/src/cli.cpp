#include "becthermo/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "becthermo/constants.hpp"
#include "becthermo/dephasing.hpp"
#include "becthermo/errors.hpp"
#include "becthermo/metrology.hpp"
#include "becthermo/optimizer.hpp"
#include "becthermo/params.hpp"
#include "becthermo/ramsey_mc.hpp"
#include "becthermo/scan.hpp"
#include "parallel.hpp"

namespace becthermo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using constants::hbar;
using constants::k_boltzmann;

struct CommonOpts {
  std::string config_path;
  std::string out;            // empty = stdout
  std::string format = "csv";
};

PhysicalConfig load_config(const CommonOpts& o) {
  return o.config_path.empty() ? PhysicalConfig::baseline()
                               : PhysicalConfig::from_file(o.config_path);
}

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_path,
                  "key=value parameter file (default: built-in baseline)");
  sub->add_option("--out", o.out, "output path (default: stdout)");
  sub->add_option("--format", o.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
}

nlohmann::json config_json(const PhysicalConfig& c) {
  return {{"m_A_kg", c.m_A},   {"m_B_kg", c.m_B}, {"omega_B_rad_s", c.omega_B},
          {"n_per_m", c.n},    {"a_B_m", c.a_B},  {"a_AB_m", c.a_AB},
          {"sigma", c.sigma}};
}

nlohmann::json quad_json(const QuadratureSpec& q, double sigma) {
  return {{"k_tilde_max", q.resolved_k_max(sigma)},
          {"rel_tol", q.rel_tol},
          {"abs_tol", q.abs_tol},
          {"max_panels", q.max_panels}};
}

nlohmann::json base_meta(const char* command, const PhysicalConfig& c,
                         const QuadratureSpec& q) {
  nlohmann::json m;
  m["tool"] = "becthermo";
  m["version"] = kToolVersion;
  m["command"] = command;
  m["config"] = config_json(c);
  m["config_fingerprint"] = config_fingerprint(c);
  m["quadrature"] = quad_json(q, c.sigma);
  return m;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw UsageError("grid size must be >= 1");
  std::vector<double> xs(static_cast<std::size_t>(count));
  if (count == 1) {
    xs[0] = lo;
    return xs;
  }
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) xs[static_cast<std::size_t>(i)] = lo + step * i;
  xs.back() = hi;
  return xs;
}

void emit(const ScanResult& r, const CommonOpts& o) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw UsageError("cannot open output file: " + o.out);
    os = &file;
  }
  if (o.format == "csv") {
    write_csv(r, *os);
  } else {
    write_json(r, *os);
  }
}

GammaSource parse_source(const std::string& s) {
  if (s == "numeric") return GammaSource::NumericGamma;
  if (s == "ohmic") return GammaSource::OhmicGamma;
  throw UsageError("--source must be numeric or ohmic");
}

// eta enters Gamma only through the a_AB^2 prefactor, so an eta override is
// exactly an a_AB rescaling (valid for both the numeric and Ohmic sources).
PhysicalConfig override_eta(PhysicalConfig c, double eta_target) {
  if (!(eta_target > 0.0)) throw UsageError("--eta must be > 0");
  const DerivedParams d = derive(c);
  c.a_AB *= std::sqrt(eta_target / d.eta);
  return c;
}

// ---------------------------------------------------------------------------
// qsnr-scan: (T, omega_T*t) grid of Gamma, QFI and QSNR

struct QsnrScanOpts {
  CommonOpts common;
  double T_min_nK = 0.1, T_max_nK = 1.0;
  int n_T = 10;
  double t_min = 0.0, t_max = 30.0;
  int n_t = 61;
  std::string source = "numeric";
};

ScanResult cmd_qsnr_scan(const QsnrScanOpts& o) {
  const PhysicalConfig cfg = load_config(o.common);
  const DerivedParams d = derive(cfg);
  const QuadratureSpec quad;
  const GammaSource source = parse_source(o.source);

  const auto Ts = linspace(o.T_min_nK, o.T_max_nK, o.n_T);
  const auto ts = linspace(o.t_min, o.t_max, o.n_t);

  ScanResult r;
  r.columns = {"T_nK", "omega_T_t", "gamma", "qfi_1_per_K2", "qsnr"};
  r.rows.resize(Ts.size() * ts.size());
  detail::parallel_for(r.rows.size(), [&](std::size_t idx) {
    const double T = Ts[idx / ts.size()] * 1e-9;
    const double x = ts[idx % ts.size()];
    const double t = x / (k_boltzmann * T / hbar);
    GammaPair gp{0.0, 0.0};
    if (x > 0.0) {
      gp = source == GammaSource::NumericGamma
               ? gamma_and_dgamma(t, T, d, quad)
               : GammaPair{gamma_ohmic(t, T, d), dgamma_ohmic_dT(t, T, d)};
    }
    const double qfi = dephasing_qfi(gp.gamma, gp.gamma > 0.0 ? gp.dgamma_dT : 0.0);
    r.rows[idx] = {T * 1e9, x, gp.gamma, qfi, T * T * qfi};
  });

  r.meta = base_meta("qsnr-scan", cfg, quad);
  r.meta["options"] = {{"T_min_nK", o.T_min_nK}, {"T_max_nK", o.T_max_nK},
                       {"n_T", o.n_T},           {"t_min", o.t_min},
                       {"t_max", o.t_max},       {"n_t", o.n_t},
                       {"source", o.source}};
  return r;
}

// ---------------------------------------------------------------------------
// topt-scan: optimal encoding time and QSNR vs temperature or a_AB

struct ToptScanOpts {
  CommonOpts common;
  std::string sweep = "temperature";  // temperature | a_AB
  std::string method = "all";         // numeric|transcendental|series|all
  std::string source = "numeric";     // gamma source for the numeric method
  double T_min_nK = 0.1, T_max_nK = 1.0;
  int n_T = 10;
  double aab_min_nm = 1.0, aab_max_nm = 5.0;
  int n_aab = 9;
  double T_nK = 0.5;        // fixed temperature for the a_AB sweep
  double T0_nK = 0.5;       // series expansion temperature
};

ScanResult cmd_topt_scan(const ToptScanOpts& o) {
  const PhysicalConfig cfg = load_config(o.common);
  const QuadratureSpec quad;
  const bool want_numeric = o.method == "numeric" || o.method == "all";
  const bool want_transc = o.method == "transcendental" || o.method == "all";
  const bool want_series = o.method == "series" || o.method == "all";
  if (!(want_numeric || want_transc || want_series)) {
    throw UsageError("--method must be numeric, transcendental, series or all");
  }
  const GammaSource source = parse_source(o.source);
  const bool temp_sweep = o.sweep == "temperature";
  if (!temp_sweep && o.sweep != "a_AB") {
    throw UsageError("--sweep must be temperature or a_AB");
  }

  const auto values = temp_sweep ? linspace(o.T_min_nK, o.T_max_nK, o.n_T)
                                 : linspace(o.aab_min_nm, o.aab_max_nm, o.n_aab);

  ScanResult r;
  r.columns = {temp_sweep ? "T_nK" : "a_AB_nm"};
  for (const char* m : {"numeric", "transcendental", "series"}) {
    const bool want = (m[0] == 'n' && want_numeric) ||
                      (m[0] == 't' && want_transc) || (m[0] == 's' && want_series);
    if (!want) continue;
    r.columns.push_back(std::string("omega_T_t_opt_") + m);
    r.columns.push_back(std::string("q_opt_") + m);
    r.columns.push_back(std::string("ok_") + m);
  }

  r.rows.resize(values.size());
  detail::parallel_for(values.size(), [&](std::size_t i) {
    PhysicalConfig point_cfg = cfg;
    double T = o.T_nK * 1e-9;
    if (temp_sweep) {
      T = values[i] * 1e-9;
    } else {
      point_cfg.a_AB = values[i] * 1e-9;
    }
    const DerivedParams d = derive(point_cfg);

    std::vector<double> row{values[i]};
    const auto push_point = [&row](double x, double q, bool ok) {
      row.push_back(x);
      row.push_back(q);
      row.push_back(ok ? 1.0 : 0.0);
    };
    // solver failures (non-convergence,点 outside a method's validity
    // regime) are recorded in-row and the scan continues
    const auto attempt = [&push_point](auto&& solve) {
      try {
        solve();
      } catch (const ConvergenceError&) {
        push_point(kNaN, kNaN, false);
      } catch (const std::invalid_argument&) {
        push_point(kNaN, kNaN, false);
      }
    };
    if (want_numeric) {
      attempt([&] {
        const OptimalPoint p = find_topt_numeric(T, d, source, quad);
        push_point(p.omega_T_t_opt, p.q_opt, true);
      });
    }
    if (want_transc) {
      attempt([&] {
        const OptimalPoint p = solve_topt_transcendental(T, d);
        push_point(p.omega_T_t_opt, p.q_opt, p.asymptotics_ok);
      });
    }
    if (want_series) {
      attempt([&] {
        const double R = approx_R(d, o.T0_nK * 1e-9);
        const SeriesQopt s = approx_qopt(T, d);
        push_point(R, s.value, s.series_ok);
      });
    }
    r.rows[i] = std::move(row);
  });

  r.meta = base_meta("topt-scan", cfg, quad);
  r.meta["options"] = {{"sweep", o.sweep},
                       {"method", o.method},
                       {"source", o.source},
                       {"T_min_nK", o.T_min_nK},
                       {"T_max_nK", o.T_max_nK},
                       {"n_T", o.n_T},
                       {"aab_min_nm", o.aab_min_nm},
                       {"aab_max_nm", o.aab_max_nm},
                       {"n_aab", o.n_aab},
                       {"T_nK", o.T_nK},
                       {"T0_nK", o.T0_nK}};
  return r;
}

// ---------------------------------------------------------------------------
// relerr: Cramer-Rao relative-error theory lines 1/sqrt(nu Q_opt)

struct RelerrOpts {
  CommonOpts common;
  std::vector<long> nu_list{400, 600, 1000};
  double T_min_nK = 0.1, T_max_nK = 1.0;
  int n_T = 10;
  std::string source = "numeric";
};

ScanResult cmd_relerr(const RelerrOpts& o) {
  const PhysicalConfig cfg = load_config(o.common);
  const DerivedParams d = derive(cfg);
  const QuadratureSpec quad;
  const GammaSource source = parse_source(o.source);
  for (long nu : o.nu_list) {
    if (nu < 1) throw UsageError("--nu entries must be >= 1");
  }

  const auto Ts = linspace(o.T_min_nK, o.T_max_nK, o.n_T);
  std::vector<double> q_opt(Ts.size());
  detail::parallel_for(Ts.size(), [&](std::size_t i) {
    q_opt[i] = find_topt_numeric(Ts[i] * 1e-9, d, source, quad).q_opt;
  });

  ScanResult r;
  r.columns = {"T_nK", "nu", "rel_error"};
  for (std::size_t i = 0; i < Ts.size(); ++i) {
    for (long nu : o.nu_list) {
      r.rows.push_back(
          {Ts[i], static_cast<double>(nu),
           1.0 / std::sqrt(static_cast<double>(nu) * q_opt[i])});
    }
  }

  r.meta = base_meta("relerr", cfg, quad);
  r.meta["options"] = {{"nu", o.nu_list},
                       {"T_min_nK", o.T_min_nK},
                       {"T_max_nK", o.T_max_nK},
                       {"n_T", o.n_T},
                       {"source", o.source}};
  return r;
}

// ---------------------------------------------------------------------------
// coherence: |rho_eg|(t) decay curves for a list of temperatures
//
// The time grid is in seconds (not omega_T*t): the point of these curves is
// comparing different temperatures at the same absolute time.

struct CoherenceOpts {
  CommonOpts common;
  std::vector<double> T_list_nK{0.01, 0.03, 0.05};
  double t_max_s = 20.0;
  int n_t = 201;
  double eta = 0.0;  // 0 = no override
  std::string source = "ohmic";
};

ScanResult cmd_coherence(const CoherenceOpts& o) {
  PhysicalConfig cfg = load_config(o.common);
  if (o.eta > 0.0) cfg = override_eta(cfg, o.eta);
  const DerivedParams d = derive(cfg);
  const QuadratureSpec quad;
  const GammaSource source = parse_source(o.source);
  if (o.T_list_nK.empty()) throw UsageError("coherence: need at least one --T");
  if (!(o.t_max_s > 0.0)) throw UsageError("coherence: --t-max-s must be > 0");

  const auto ts = linspace(0.0, o.t_max_s, o.n_t);
  ScanResult r;
  r.columns = {"T_nK", "t_s", "coherence"};
  r.rows.resize(o.T_list_nK.size() * ts.size());
  detail::parallel_for(r.rows.size(), [&](std::size_t idx) {
    const double T = o.T_list_nK[idx / ts.size()] * 1e-9;
    const double t = ts[idx % ts.size()];
    const double gamma = source == GammaSource::OhmicGamma
                             ? gamma_ohmic(t, T, d)
                             : gamma_numeric(t, T, d, quad);
    r.rows[idx] = {T * 1e9, t, probe_state(gamma).coherence};
  });

  r.meta = base_meta("coherence", cfg, quad);
  r.meta["options"] = {{"T_nK", o.T_list_nK},
                       {"t_max_s", o.t_max_s},
                       {"n_t", o.n_t},
                       {"eta_override", o.eta},
                       {"source", o.source},
                       {"eta_effective", d.eta}};
  return r;
}

// ---------------------------------------------------------------------------
// mc: Monte Carlo Cramer-Rao saturation study

struct McOpts {
  CommonOpts common;
  double T_nK = 0.5;
  std::vector<long> nu_list{400, 600, 1000};
  long trials = 500;
  std::uint64_t seed = 42;
};

ScanResult cmd_mc(const McOpts& o) {
  const PhysicalConfig cfg = load_config(o.common);
  const DerivedParams d = derive(cfg);
  const QuadratureSpec quad;
  if (o.trials < 100) throw UsageError("mc: --trials must be >= 100");

  const auto rows = crb_study(o.T_nK * 1e-9, o.nu_list, o.trials, o.seed, d, quad);

  ScanResult r;
  r.columns = {"nu",            "trials",        "mean_T_hat",
               "rel_std",       "crb_rel_error", "unidentifiable_frac"};
  for (const auto& row : rows) {
    r.rows.push_back({static_cast<double>(row.nu), static_cast<double>(row.trials),
                      row.mean_T_hat * 1e9, row.rel_std, row.crb_rel_error,
                      row.unidentifiable_frac});
  }

  r.meta = base_meta("mc", cfg, quad);
  r.meta["seed"] = o.seed;
  r.meta["options"] = {{"T_nK", o.T_nK},
                       {"nu", o.nu_list},
                       {"trials", o.trials},
                       {"units", {{"mean_T_hat", "nK"}}}};
  return r;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "becthermo: impurity-qubit thermometry of a quasi-1D condensate.\n"
      "Computes dephasing, quantum Fisher information, QSNR, optimal encoding\n"
      "times and Monte Carlo Cramer-Rao checks; emits figure data as CSV/JSON."};
  app.require_subcommand(1);

  QsnrScanOpts qsnr;
  auto* sub_qsnr = app.add_subcommand(
      "qsnr-scan", "QSNR over a (temperature, omega_T*t) grid");
  add_common(sub_qsnr, qsnr.common);
  sub_qsnr->add_option("--T-min", qsnr.T_min_nK, "lowest temperature [nK]");
  sub_qsnr->add_option("--T-max", qsnr.T_max_nK, "highest temperature [nK]");
  sub_qsnr->add_option("--n-T", qsnr.n_T, "temperature grid size");
  sub_qsnr->add_option("--t-min", qsnr.t_min, "lowest omega_T*t");
  sub_qsnr->add_option("--t-max", qsnr.t_max, "highest omega_T*t");
  sub_qsnr->add_option("--n-t", qsnr.n_t, "time grid size");
  sub_qsnr->add_option("--source", qsnr.source, "numeric|ohmic")
      ->check(CLI::IsMember({"numeric", "ohmic"}));

  ToptScanOpts topt;
  auto* sub_topt = app.add_subcommand(
      "topt-scan", "optimal encoding time and QSNR vs temperature or a_AB");
  add_common(sub_topt, topt.common);
  sub_topt->add_option("--sweep", topt.sweep, "temperature|a_AB")
      ->check(CLI::IsMember({"temperature", "a_AB"}));
  sub_topt->add_option("--method", topt.method,
                       "numeric|transcendental|series|all")
      ->check(CLI::IsMember({"numeric", "transcendental", "series", "all"}));
  sub_topt->add_option("--source", topt.source,
                       "gamma source for the numeric method")
      ->check(CLI::IsMember({"numeric", "ohmic"}));
  sub_topt->add_option("--T-min", topt.T_min_nK, "lowest temperature [nK]");
  sub_topt->add_option("--T-max", topt.T_max_nK, "highest temperature [nK]");
  sub_topt->add_option("--n-T", topt.n_T, "temperature grid size");
  sub_topt->add_option("--aab-min", topt.aab_min_nm, "lowest a_AB [nm]");
  sub_topt->add_option("--aab-max", topt.aab_max_nm, "highest a_AB [nm]");
  sub_topt->add_option("--n-aab", topt.n_aab, "a_AB grid size");
  sub_topt->add_option("--T", topt.T_nK, "temperature for the a_AB sweep [nK]");
  sub_topt->add_option("--T0", topt.T0_nK, "series expansion temperature [nK]");

  RelerrOpts rel;
  auto* sub_rel = app.add_subcommand(
      "relerr", "Cramer-Rao relative-error lines 1/sqrt(nu Q_opt) vs T");
  add_common(sub_rel, rel.common);
  sub_rel->add_option("--nu", rel.nu_list, "measurement counts (repeatable)");
  sub_rel->add_option("--T-min", rel.T_min_nK, "lowest temperature [nK]");
  sub_rel->add_option("--T-max", rel.T_max_nK, "highest temperature [nK]");
  sub_rel->add_option("--n-T", rel.n_T, "temperature grid size");
  sub_rel->add_option("--source", rel.source, "numeric|ohmic")
      ->check(CLI::IsMember({"numeric", "ohmic"}));

  CoherenceOpts coh;
  auto* sub_coh = app.add_subcommand(
      "coherence", "probe coherence |rho_eg| decay vs absolute time");
  add_common(sub_coh, coh.common);
  sub_coh->add_option("--T", coh.T_list_nK, "temperatures [nK] (repeatable)");
  sub_coh->add_option("--t-max-s", coh.t_max_s, "time grid upper end [s]");
  sub_coh->add_option("--n-t", coh.n_t, "time grid size");
  sub_coh->add_option("--eta", coh.eta,
                      "override reservoir coupling (rescales a_AB)")
      ->check(CLI::PositiveNumber);
  sub_coh->add_option("--source", coh.source, "ohmic|numeric")
      ->check(CLI::IsMember({"numeric", "ohmic"}));

  McOpts mc;
  auto* sub_mc = app.add_subcommand(
      "mc", "Monte Carlo Cramer-Rao saturation study at t_opt");
  add_common(sub_mc, mc.common);
  sub_mc->add_option("--T", mc.T_nK, "true temperature [nK]");
  sub_mc->add_option("--nu", mc.nu_list, "measurement counts (repeatable)");
  sub_mc->add_option("--trials", mc.trials, "independent estimates per nu");
  sub_mc->add_option("--seed", mc.seed, "PRNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*sub_qsnr) emit(cmd_qsnr_scan(qsnr), qsnr.common);
    if (*sub_topt) emit(cmd_topt_scan(topt), topt.common);
    if (*sub_rel) emit(cmd_relerr(rel), rel.common);
    if (*sub_coh) emit(cmd_coherence(coh), coh.common);
    if (*sub_mc) emit(cmd_mc(mc), mc.common);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace becthermo
