#pragma once

// Adaptive panel quadrature for non-negative oscillatory integrands on
// [0, upper]. The caller supplies a width cap (quarter period of the local
// oscillation, plus envelope resolution) and a rigorous bound on the
// remaining tail so the march can stop once the rest of the domain cannot
// matter. Each panel is integrated with a Gauss-Kronrod 7-15 pair and
// bisected until the embedded error estimate passes the local tolerance.
//
// Two integrand components are evaluated per node (the dephasing exponent
// and its temperature derivative share envelope and panels).

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "becthermo/errors.hpp"

namespace becthermo::detail {

struct PairVal {
  double g;  // primary integrand (drives the tail stop)
  double d;  // secondary integrand, bounded by the primary's tail envelope
};

// 15-point Kronrod nodes (positive half, descending) with the embedded
// 7-point Gauss rule on the odd-index nodes.
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelEval {
  double ig, id;    // Kronrod estimates
  double eg, ed;    // |Kronrod - Gauss|
  double xs[15];    // node positions, for optional recording
  PairVal fs[15];
};

template <class F>
PanelEval gk15_pair(const F& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  PanelEval out{};
  double kg = 0.0, kd = 0.0, gg = 0.0, gd = 0.0;

  const PairVal fc = f(c);
  out.xs[14] = c;
  out.fs[14] = fc;
  kg += kWgk[7] * fc.g;
  kd += kWgk[7] * fc.d;
  gg += kWg[3] * fc.g;
  gd += kWg[3] * fc.d;

  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double x1 = c - dx, x2 = c + dx;
    const PairVal f1 = f(x1), f2 = f(x2);
    out.xs[2 * j] = x1;
    out.xs[2 * j + 1] = x2;
    out.fs[2 * j] = f1;
    out.fs[2 * j + 1] = f2;
    kg += kWgk[j] * (f1.g + f2.g);
    kd += kWgk[j] * (f1.d + f2.d);
    if (j % 2 == 1) {
      gg += kWg[(j - 1) / 2] * (f1.g + f2.g);
      gd += kWg[(j - 1) / 2] * (f1.d + f2.d);
    }
  }
  out.ig = kg * h;
  out.id = kd * h;
  out.eg = std::abs(kg - gg) * h;
  out.ed = std::abs(kd - gd) * h;
  return out;
}

struct NodeSink {
  std::vector<double>* xs = nullptr;
  std::vector<double>* ws = nullptr;
};

struct MarchResult {
  double ig = 0.0;
  double id = 0.0;
  long panels = 0;
};

struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double v) {
    const double y = v - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

// f: double -> PairVal, both components >= 0.
// cap: double -> max panel width at that point (> 0).
// tail: double -> upper bound on the integral of f.g over [x, upper]
//       (may return +inf to disable the early stop below its start).
template <class F, class Cap, class Tail>
MarchResult integrate_marching(const F& f, const Cap& cap, const Tail& tail,
                               double upper, double rel_tol, double abs_tol,
                               long max_panels, NodeSink sink = {}) {
  MarchResult res;
  KahanSum sg, sd;
  const double width_floor = upper * 1e-15;

  struct Span {
    double lo, hi;
    int depth;
  };
  std::vector<Span> stack;
  stack.reserve(64);

  double x = 0.0;
  while (x < upper) {
    double w = std::min(cap(x), upper - x);
    if (w < width_floor) w = std::min(width_floor, upper - x);
    stack.push_back({x, x + w, 0});

    while (!stack.empty()) {
      const Span span = stack.back();
      stack.pop_back();
      if (++res.panels > max_panels) {
        throw ConvergenceError(
            "oscillatory quadrature: panel budget exhausted before tolerances met");
      }
      const PanelEval pe = gk15_pair(f, span.lo, span.hi);
      const double frac = (span.hi - span.lo) / upper;
      const double tol_g = std::max(rel_tol * std::abs(pe.ig), abs_tol * frac);
      const double tol_d = std::max(rel_tol * std::abs(pe.id), abs_tol * frac);
      const bool converged = 10.0 * pe.eg <= tol_g && 10.0 * pe.ed <= tol_d;
      if (converged || span.depth >= 60 || (span.hi - span.lo) <= width_floor) {
        sg.add(pe.ig);
        sd.add(pe.id);
        if (sink.xs) {
          const double h = 0.5 * (span.hi - span.lo);
          for (int j = 0; j < 15; ++j) {
            sink.xs->push_back(pe.xs[j]);
            const int wi = (j == 14) ? 7 : j / 2;
            sink.ws->push_back(kWgk[wi] * h);
          }
        }
      } else {
        const double mid = 0.5 * (span.lo + span.hi);
        stack.push_back({mid, span.hi, span.depth + 1});
        stack.push_back({span.lo, mid, span.depth + 1});
      }
    }

    x += w;
    if (tail(x) <= 0.5 * std::max(abs_tol, rel_tol * sg.s)) break;
  }

  res.ig = sg.s;
  res.id = sd.s;
  return res;
}

}  // namespace becthermo::detail
