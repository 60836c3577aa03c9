#pragma once

// Sign-change bracketing on a sampled segment and safeguarded Newton
// refinement. Functions are evaluated on Dual so Newton gets exact
// derivatives without hand-written formulas.

#include <cmath>
#include <vector>

namespace rz {

/// Forward-mode dual number v + d*eps.
struct Dual {
  double v = 0;
  double d = 0;

  constexpr Dual() = default;
  constexpr Dual(double value, double deriv = 0) : v(value), d(deriv) {}

  static Dual variable(double x) { return {x, 1}; }

  friend Dual operator+(Dual x, Dual y) { return {x.v + y.v, x.d + y.d}; }
  friend Dual operator-(Dual x, Dual y) { return {x.v - y.v, x.d - y.d}; }
  friend Dual operator-(Dual x) { return {-x.v, -x.d}; }
  friend Dual operator*(Dual x, Dual y) { return {x.v * y.v, x.d * y.v + x.v * y.d}; }
  friend Dual operator/(Dual x, Dual y) { return {x.v / y.v, (x.d * y.v - x.v * y.d) / (y.v * y.v)}; }
};

inline Dual sin(Dual x) { return {std::sin(x.v), std::cos(x.v) * x.d}; }
inline Dual cos(Dual x) { return {std::cos(x.v), -std::sin(x.v) * x.d}; }
inline Dual sqrt(Dual x) {
  const double s = std::sqrt(x.v);
  return {s, x.d / (2 * s)};
}
inline Dual powi(Dual x, int k) {
  if (k == 0) return {1, 0};
  const double p = std::pow(x.v, k - 1);
  return {p * x.v, k * p * x.d};
}
inline double powi(double x, int k) { return std::pow(x, k); }
inline double value_of(double x) { return x; }
inline double value_of(Dual x) { return x.v; }

struct Bracket {
  double lo = 0;
  double hi = 0;
};

struct RefinedRoot {
  double x = 0;
  double fx = 0;
  int newton_steps = 0;
};

/// Root of f on [lo, hi] given f(lo), f(hi) of opposite sign. Newton steps
/// that leave the current bracket fall back to bisection; stops when the step
/// is at most `step_tol` or after `newton_cap` Newton steps (bisection finishes).
template <class F>
RefinedRoot refine_root(F&& f, double lo, double hi, double flo, int newton_cap = 50,
                        double step_tol = 1e-13) {
  double x = 0.5 * (lo + hi);
  RefinedRoot out;
  for (int it = 0; it < 400; ++it) {
    const Dual fx = f(Dual::variable(x));
    out.fx = fx.v;
    if (fx.v == 0) break;
    if ((fx.v < 0) == (flo < 0)) {
      lo = x;
      flo = fx.v;
    } else {
      hi = x;
    }
    double next = 0.5 * (lo + hi);
    if (out.newton_steps < newton_cap && fx.d != 0 && std::isfinite(fx.d)) {
      const double cand = x - fx.v / fx.d;
      if (cand > lo && cand < hi) {
        next = cand;
        ++out.newton_steps;
      }
    }
    const double step = std::abs(next - x);
    x = next;
    if (step <= step_tol || hi - lo <= step_tol) break;
  }
  out.x = x;
  out.fx = value_of(f(x));
  return out;
}

}  // namespace rz
