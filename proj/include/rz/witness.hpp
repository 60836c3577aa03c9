#pragma once

// Explicit non-real z* at which the two smallest t-zeros of the generating
// function's denominator have equal modulus. Zeros of P_n accumulate at such
// points, so the family is not hyperbolic for all n.
//
// Denominators, written as L(t) Q(t) with L(t) = l1 t + 1 and
// Q(t) = q2 t^2 + q1 t + 1:
//   thm1   L = t + 1,          Q = (az+b)t^2 + zt + 1
//   thm2   L = (az+b)t + 1,    Q = ct^2 + zt + 1
//   thm3   L = (az+b)t + 1,    Q = t^2 + zt + 1

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rz/errors.hpp"
#include "rz/polyseq.hpp"
#include "rz/rootfinder.hpp"

namespace rz {

namespace witness_defaults {
inline constexpr double residual_tol = 1e-10;
inline constexpr double moduli_tol = 1e-10;
inline constexpr double distinct_tol = 1e-9;
inline constexpr double nonreal_tol = 1e-9;
/// |Im z| above this counts as a non-real zero of P_n.
inline constexpr double empirical_imag = 1e-6;
inline constexpr int geometric_steps = 40;
inline constexpr int uniform_points = 720;
/// The case |f| = 1 on the whole circle is accepted at this level.
inline constexpr double unit_modulus_slack = 1e-12;
inline constexpr int n_max = 80;
}  // namespace witness_defaults

enum class WitnessFamily { Thm1, Thm2, Thm3 };

inline const char* to_string(WitnessFamily f) {
  switch (f) {
    case WitnessFamily::Thm1: return "thm1";
    case WitnessFamily::Thm2: return "thm2";
    default: return "thm3";
  }
}

struct TZero {
  std::complex<double> t;
  double modulus = INFINITY;
  bool finite = true;
  /// "linear" or "quadratic": the denominator factor it annihilates.
  std::string factor;
};

struct WitnessChecks {
  bool z_star_nonreal = false;
  bool moduli_ordering_ok = false;
  bool zeros_distinct = false;
  /// |m0 - m1| for the two smallest moduli.
  double moduli_gap = INFINITY;
  /// m2 - m1 (non-negative when the ordering holds).
  double ordering_margin = -INFINITY;
  double min_separation = 0;
  /// Largest factor residual or Vieta defect over the claimed zeros.
  double max_residual = INFINITY;
  bool residuals_ok = false;
};

struct WitnessEmpirical {
  int n_max = 0;
  /// First n whose P_n has a zero with |Im| > 1e-6.
  int n_found = 0;
  /// min |z - z*| over the zeros of P_20 (when n_max >= 20).
  std::optional<double> dist_at_20;
  /// min |z - z*| over the zeros of P_{n_max}.
  double dist_to_zstar = INFINITY;
  /// dist_to_zstar < dist_at_20; only meaningful for n_max > 20.
  bool distance_shrank = false;
};

struct WitnessReport {
  WitnessFamily family = WitnessFamily::Thm1;
  double a = 0, b = 0, c = 1;
  std::string case_tag;
  std::optional<double> theta_star;
  std::optional<double> y_star;
  std::optional<std::complex<double>> tau_star;
  std::complex<double> z_star;
  /// Sorted by modulus, zeros at infinity last.
  std::vector<TZero> t_zeros;
  WitnessChecks checks;
  std::optional<WitnessEmpirical> empirical;
  /// Candidates tried by the angle or bisection search.
  std::vector<std::string> trace;
  std::vector<std::string> notes;

  /// Non-real z*, equal smallest moduli, and claimed zeros annihilate their factors.
  bool certified() const {
    return checks.z_star_nonreal && checks.moduli_ordering_ok && checks.residuals_ok;
  }
  bool fully_certified() const { return certified() && checks.zeros_distinct; }
};

struct WitnessOptions {
  /// Tried before the default angle candidates.
  std::optional<double> theta_start;
};

namespace detail {

using cplx = std::complex<double>;

inline cplx unit(double theta) { return std::polar(1.0, theta); }

/// sqrt with the cut along [0, inf): arg taken in [0, 2pi).
inline cplx sqrt_cut_positive(cplx w) {
  double arg = std::arg(w);
  if (arg < 0) arg += 2 * std::numbers::pi;
  return std::polar(std::sqrt(std::abs(w)), arg / 2);
}

inline double sgn(double x) { return x < 0 ? -1.0 : 1.0; }

inline std::string fmt_candidate(double theta, double value, const char* what) {
  std::ostringstream os;
  os.precision(17);
  os << "theta=" << theta << " " << what << "=" << value;
  return os.str();
}

/// theta = pi 2^-k (toward 0) or pi - pi 2^-k (toward pi), k = 1..steps.
inline std::vector<double> geometric_sweep(bool toward_zero, int steps = witness_defaults::geometric_steps) {
  std::vector<double> out;
  for (int k = 1; k <= steps; ++k) {
    const double h = std::numbers::pi * std::ldexp(1.0, -k);
    out.push_back(toward_zero ? h : std::numbers::pi - h);
  }
  return out;
}

struct FactorCoeffs {
  cplx l1, q2, q1;
};

inline FactorCoeffs factors(WitnessFamily f, double a, double b, double c, cplx z) {
  const cplx w = a * z + b;
  switch (f) {
    case WitnessFamily::Thm1: return {1.0, w, z};
    case WitnessFamily::Thm2: return {w, c, z};
    default: return {w, 1.0, z};
  }
}

inline TZero finite_zero(cplx t, const char* factor) { return {t, std::abs(t), true, factor}; }
inline TZero infinite_zero(const char* factor) { return {cplx(INFINITY, 0), INFINITY, false, factor}; }

/// Fills checks and sorts the zeros. Expects one linear zero and two
/// quadratic ones (one of them at infinity when q2 = 0).
inline void certify(WitnessReport& r) {
  const auto fc = factors(r.family, r.a, r.b, r.c, r.z_star);
  double worst = 0;
  std::vector<cplx> quad_finite;
  int quad_infinite = 0;
  for (const auto& z : r.t_zeros) {
    if (!z.finite) {
      if (z.factor == "quadratic") ++quad_infinite;
      // A zero at infinity is only legitimate when the leading coefficient vanishes.
      const double lead = z.factor == "linear" ? std::abs(fc.l1) : std::abs(fc.q2);
      worst = std::max(worst, lead);
      continue;
    }
    const cplx t = z.t;
    const double at = std::abs(t);
    double res;
    if (z.factor == "linear") {
      res = std::abs(fc.l1 * t + 1.0) / (std::abs(fc.l1) * at + 1);
    } else {
      res = std::abs((fc.q2 * t + fc.q1) * t + 1.0) / (std::abs(fc.q2) * at * at + std::abs(fc.q1) * at + 1);
      quad_finite.push_back(t);
    }
    worst = std::max(worst, res);
  }
  // Vieta pins the quadratic pair down as a multiset, not just two roots.
  if (quad_finite.size() == 2) {
    worst = std::max(worst, std::abs(fc.q2 * quad_finite[0] * quad_finite[1] - 1.0));
  } else if (quad_finite.size() == 1 && quad_infinite == 1) {
    worst = std::max(worst, std::abs(fc.q1 * quad_finite[0] + 1.0) / (std::abs(fc.q1 * quad_finite[0]) + 1));
  } else {
    worst = INFINITY;
  }

  std::stable_sort(r.t_zeros.begin(), r.t_zeros.end(),
                   [](const TZero& x, const TZero& y) { return x.modulus < y.modulus; });
  auto& ck = r.checks;
  ck.max_residual = worst;
  ck.residuals_ok = worst <= witness_defaults::residual_tol;
  ck.z_star_nonreal = std::abs(r.z_star.imag()) > witness_defaults::nonreal_tol;
  const auto& t = r.t_zeros;
  ck.moduli_gap = std::abs(t[0].modulus - t[1].modulus);
  if (!t[1].finite) ck.moduli_gap = INFINITY;
  ck.ordering_margin = t[2].modulus - t[1].modulus;
  ck.moduli_ordering_ok =
      ck.moduli_gap <= witness_defaults::moduli_tol && ck.ordering_margin >= -witness_defaults::moduli_tol;
  ck.min_separation = INFINITY;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i].finite && t[j].finite) ck.min_separation = std::min(ck.min_separation, std::abs(t[i].t - t[j].t));
  ck.zeros_distinct = ck.min_separation > witness_defaults::distinct_tol;
}

inline std::vector<double> with_start(std::vector<double> sweep, const WitnessOptions& opt) {
  if (opt.theta_start) sweep.insert(sweep.begin(), *opt.theta_start);
  return sweep;
}

inline bool nonreal_enough(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag()) && std::abs(z.imag()) > witness_defaults::nonreal_tol;
}

/// Thm3 / Case-1 style: e^{2i theta} - z e^{i theta}(az+b) + (az+b)^2 = 0 solved
/// for z with the chosen square-root branch `root` of b^2 - 4a^2 + 4a e^{i theta}
/// (a != 0). Returns z.
inline cplx z_from_branch(double a, double b, cplx e, cplx root) {
  return (-2 * a * b + b * e + e * root) / (2 * a * a - 2 * a * e);
}

}  // namespace detail

// --- Thm1 ------------------------------------------------------------------

/// b <= -1: t-zeros {-1, tau* e^{+-i theta*}} with |tau*|^2 = -1/b.
inline WitnessReport witness_thm1_low(double a, double b, const WitnessOptions& opt = {}) {
  using namespace detail;
  if (!(b <= -1)) throw DomainError("witness_thm1_low requires b <= -1");
  WitnessReport r;
  r.family = WitnessFamily::Thm1;
  r.a = a, r.b = b;
  r.case_tag = "Thm1-bLeNeg1";
  std::vector<double> cands{std::numbers::pi / 3};
  for (int k = 2; k <= witness_defaults::geometric_steps; ++k)
    cands.push_back(std::numbers::pi / 2 - std::numbers::pi * std::ldexp(1.0, -k));
  cands = with_start(cands, opt);
  for (double th : cands) {
    const double cs = std::cos(th);
    const double gap = -b - a * a * cs * cs;
    r.trace.push_back(fmt_candidate(th, gap, "-b-a^2cos^2"));
    if (!(th > 0 && th < std::numbers::pi) || std::abs(cs) < 1e-12 || !(gap > 0)) continue;
    // Non-real root of b tau^2 - 2a cos(theta) tau - 1, taken with Im > 0.
    const cplx tau = cplx(a * cs, -std::sqrt(gap)) / b;
    const cplx den = 2 * a * tau * cs + 1.0;
    if (std::abs(den) < 1e-14) continue;
    const cplx z = -2 * b * tau * cs / den;
    if (!nonreal_enough(z)) continue;
    r.theta_star = th;
    r.tau_star = tau;
    r.z_star = z;
    const cplx e = unit(th);
    r.t_zeros = {finite_zero(-1.0, "linear"), finite_zero(tau * e, "quadratic"),
                 finite_zero(tau * std::conj(e), "quadratic")};
    certify(r);
    const double tau_defect = std::abs(std::norm(tau) + 1 / b);
    r.checks.max_residual = std::max(r.checks.max_residual, tau_defect);
    r.checks.residuals_ok = r.checks.max_residual <= witness_defaults::residual_tol;
    return r;
  }
  throw WitnessSearchError("no admissible theta* for the b <= -1 construction", r.trace);
}

/// -1 < b < 1+2|a|: e^{i theta*} and -1 are unit-modulus zeros, the remaining
/// one has modulus 1/|az*+b| > 1 (or sits at infinity when az*+b = 0).
inline WitnessReport witness_thm1_mid(double a, double b, const WitnessOptions& opt = {}) {
  using namespace detail;
  if (!(b > -1 && b < 1 + 2 * std::abs(a))) throw DomainError("witness_thm1_mid requires -1 < b < 1+2|a|");
  WitnessReport r;
  r.family = WitnessFamily::Thm1;
  r.a = a, r.b = b;
  r.case_tag = "Thm1-mid";
  for (double th : with_start(geometric_sweep(a >= 0), opt)) {
    const double cs = std::cos(th);
    const double lhs = b * b - 2 * a * b * cs, rhs = 1 + 2 * a * cs;
    r.trace.push_back(fmt_candidate(th, rhs - lhs, "1+2acos-b^2+2abcos"));
    if (!(th > 0 && th < std::numbers::pi) || std::abs(cs) < 1e-12 || !(lhs < rhs)) continue;
    const cplx e = unit(th), e2 = e * e;
    const cplx z = (-1.0 - b * e2) / (a * e2 + e);
    if (!nonreal_enough(z)) continue;
    // Squared form of |az*+b| < 1.
    const double ratio = std::norm(b * e - a) / std::norm(a * e + 1.0);
    if (!(ratio < 1)) continue;
    r.theta_star = th;
    r.z_star = z;
    const cplx w = a * z + b;
    r.t_zeros = {finite_zero(-1.0, "linear"), finite_zero(e, "quadratic")};
    if (std::abs(w) <= 1e-14 * (std::abs(a) * std::abs(z) + std::abs(b) + 1)) {
      r.t_zeros.push_back(infinite_zero("quadratic"));
      r.notes.push_back("az*+b = 0: quadratic factor is linear, one zero at infinity");
    } else {
      r.t_zeros.push_back(finite_zero(1.0 / (w * e), "quadratic"));
    }
    certify(r);
    return r;
  }
  throw WitnessSearchError("no theta* satisfies b^2 - 2ab cos < 1 + 2a cos", r.trace);
}

/// Dispatches on b.
inline WitnessReport witness_thm1(double a, double b, const WitnessOptions& opt = {}) {
  if (b >= 1 + 2 * std::abs(a)) throw DomainError("thm1 family is hyperbolic for b >= 1+2|a|; no witness exists");
  return b <= -1 ? witness_thm1_low(a, b, opt) : witness_thm1_mid(a, b, opt);
}

// --- Thm2 (c < 0) ------------------------------------------------------------

/// Built for (a, b/sqrt|c|, -1) in w = z/sqrt|c|, then scaled back:
/// z* = sqrt|c| w*, t = s / sqrt|c|.
inline WitnessReport witness_thm2(double a, double b, double c, const WitnessOptions& opt = {}) {
  using namespace detail;
  if (!(c < 0)) throw DomainError("witness_thm2 requires c < 0");
  WitnessReport r;
  r.family = WitnessFamily::Thm2;
  r.a = a, r.b = b, r.c = c;
  const double sc = std::sqrt(-c);
  const double bn = b / sc;
  cplx w;
  if (std::abs(bn) < 1) {
    r.case_tag = "Thm2-smallB";
    const double cap = a == 0 ? 2.0 : std::min(std::sqrt(1 - bn * bn) / std::abs(a), 2.0);
    const double y = cap / 2;
    r.y_star = y * sc;
    w = cplx(0, y);
  } else {
    r.case_tag = "Thm2-bigB";
    auto f = [&](double th) {
      const cplx e = unit(th);
      return std::abs((std::abs(bn) + std::sqrt(bn * bn + 4 * a * a - 4 * a * e)) / (2 * a - 2.0 * e));
    };
    auto build = [&](double th) -> std::optional<cplx> {
      const cplx e = unit(th);
      cplx ww;
      if (a == 0) {
        ww = (bn * bn - e * e) / (bn * e);
      } else {
        const cplx root = std::sqrt(bn * bn + 4 * a * a - 4 * a * e);
        ww = (-2 * a * bn + bn * e - sgn(bn) * e * root) / (2 * a * a - 2 * a * e);
      }
      if (!nonreal_enough(ww)) return std::nullopt;
      return ww;
    };
    std::vector<double> cands = with_start(geometric_sweep(true), opt);
    if (a == 0) cands.insert(cands.begin() + (opt.theta_start ? 1 : 0), std::numbers::pi / 2);
    const auto far = geometric_sweep(false);
    cands.insert(cands.end(), far.begin(), far.end());
    std::optional<double> chosen;
    for (double th : cands) {
      if (!(th > 0 && th < 2 * std::numbers::pi) || std::abs(std::sin(th)) < 1e-12) continue;
      const double v = f(th);
      r.trace.push_back(fmt_candidate(th, v, "|f|"));
      if (v >= 1 - witness_defaults::unit_modulus_slack && build(th)) {
        chosen = th;
        break;
      }
    }
    if (!chosen) {
      // Dense sweep: take the maximiser.
      double best = -1, best_th = 0;
      for (int k = 1; k < witness_defaults::uniform_points; ++k) {
        const double th = 2 * std::numbers::pi * k / witness_defaults::uniform_points;
        if (std::abs(std::sin(th)) < 1e-12 || !build(th)) continue;
        const double v = f(th);
        if (v > best) best = v, best_th = th;
      }
      r.trace.push_back(fmt_candidate(best_th, best, "max|f| over uniform sweep"));
      if (best >= 1 - witness_defaults::unit_modulus_slack) chosen = best_th;
    }
    if (!chosen) throw WitnessSearchError("no theta with |f(e^{i theta})| >= 1 (branch-cut bug?)", r.trace);
    r.theta_star = *chosen;
    w = *build(*chosen);
  }
  r.z_star = sc * w;
  // Zeros in s for (aw + bn)s + 1 and -s^2 + ws + 1.
  const cplx alpha = a * w + bn;
  std::vector<cplx> qs;
  if (r.theta_star) {
    const cplx s1 = -unit(*r.theta_star) / alpha;
    qs = {s1, -1.0 / s1};
  } else {
    const double y = w.imag(), d = std::sqrt(4 - y * y);
    qs = {cplx(d, y) / 2.0, cplx(-d, y) / 2.0};
  }
  r.t_zeros = {finite_zero(-1.0 / alpha / sc, "linear"), finite_zero(qs[0] / sc, "quadratic"),
               finite_zero(qs[1] / sc, "quadratic")};
  if (c != -1) r.notes.push_back("normalized to c = -1 via t -> t/sqrt|c|");
  certify(r);
  return r;
}

// --- Thm3 --------------------------------------------------------------------

namespace detail {

/// t0 = -1/(az+b), t1 = t0 e^{i theta}, t2 = -e^{-i theta}(az+b).
inline void thm3_zeros_from_theta(WitnessReport& r, double theta) {
  const cplx w = r.a * r.z_star + r.b;
  const cplx e = unit(theta);
  r.t_zeros = {finite_zero(-1.0 / w, "linear"), finite_zero(-e / w, "quadratic"),
               finite_zero(-std::conj(e) * w, "quadratic")};
}

/// Case 1 (also Case 3a): sweep toward e^{i theta} -> sign(a).
inline WitnessReport thm3_case1(WitnessReport r, const WitnessOptions& opt) {
  const double a = r.a, b = r.b;
  std::vector<double> cands;
  if (a == 0) {
    cands = with_start({std::numbers::pi / 2}, opt);
    const auto rest = geometric_sweep(true);
    cands.insert(cands.end(), rest.begin(), rest.end());
  } else {
    cands = with_start(geometric_sweep(a > 0), opt);
  }
  for (double th : cands) {
    if (!(th > 0 && th < std::numbers::pi)) continue;
    const cplx e = unit(th);
    cplx z;
    if (a == 0) {
      z = (b * b + e * e) / (b * e);
    } else if (b == 0) {
      z = cplx(0, 1) * e / std::sqrt(a * a - a * e);
    } else {
      z = z_from_branch(a, b, e, -sgn(b) * std::sqrt(b * b - 4 * a * a + 4 * a * e));
    }
    const double m = std::abs(a * z + b);
    r.trace.push_back(fmt_candidate(th, m, "|az+b|"));
    if (!(m > 1) || !nonreal_enough(z)) continue;
    r.theta_star = th;
    r.z_star = z;
    thm3_zeros_from_theta(r, th);
    certify(r);
    return r;
  }
  throw WitnessSearchError("no theta with |az+b| > 1 in the |a| <= 1 construction", r.trace);
}

/// Case 2: z = iy with 2 sqrt(a^2y^2+b^2) = sqrt(y^2+4) + y.
inline WitnessReport thm3_case2(WitnessReport r) {
  const double a = r.a, b = r.b;
  auto g = [&](double y) { return 2 * std::sqrt(a * a * y * y + b * b) - std::sqrt(y * y + 4) - y; };
  double lo = 0, hi = 1;
  while (g(hi) <= 0) {
    hi *= 2;
    if (hi > 1e300) throw WitnessSearchError("no sign change for the imaginary-axis equation", r.trace);
  }
  r.trace.push_back(fmt_candidate(hi, g(hi), "bracket hi g"));
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? hi : lo) = mid;
  }
  const double y = 0.5 * (lo + hi);
  r.y_star = y;
  r.z_star = cplx(0, y);
  const double s = std::sqrt(y * y + 4);
  r.t_zeros = {finite_zero(-1.0 / cplx(b, a * y), "linear"), finite_zero(cplx(0, (s - y) / 2), "quadratic"),
               finite_zero(cplx(0, -(s + y) / 2), "quadratic")};
  certify(r);
  if (!r.checks.zeros_distinct)
    r.notes.push_back("t0 coincides with the smaller quadratic zero (a double zero of the denominator)");
  return r;
}

/// Case 3b: |f(e^{i theta})| > 1 for f(z) = (-b + sqrt(b^2-4a^2+4az))/(2a-2z),
/// sqrt cut along [0, inf); the full circle is searched.
inline WitnessReport thm3_case3b(WitnessReport r, const WitnessOptions& opt) {
  const double a = r.a, b = r.b;
  auto root = [&](double th) { return sqrt_cut_positive(b * b - 4 * a * a + 4 * a * unit(th)); };
  auto fmod_ = [&](double th) { return std::abs((-b + root(th)) / (2 * a - 2.0 * unit(th))); };
  auto try_theta = [&](double th) -> bool {
    if (std::abs(std::sin(th)) < 1e-12) return false;
    const double v = fmod_(th);
    r.trace.push_back(fmt_candidate(th, v, "|f|"));
    if (!(v > 1)) return false;
    const cplx z = z_from_branch(a, b, unit(th), root(th));
    if (!nonreal_enough(z)) return false;
    r.theta_star = th;
    r.z_star = z;
    return true;
  };
  std::vector<double> cands = with_start(geometric_sweep(true), opt);
  for (double th : geometric_sweep(false)) cands.push_back(th);
  for (double th : geometric_sweep(true)) cands.push_back(2 * std::numbers::pi - th);
  bool found = false;
  for (double th : cands)
    if ((found = try_theta(th))) break;
  if (!found) {
    double best = -1, best_th = 0;
    for (int k = 1; k < witness_defaults::uniform_points; ++k) {
      const double th = 2 * std::numbers::pi * k / witness_defaults::uniform_points;
      if (std::abs(std::sin(th)) < 1e-12) continue;
      const double v = fmod_(th);
      if (v > best) best = v, best_th = th;
    }
    found = try_theta(best_th);
  }
  if (!found) throw WitnessSearchError("max |f| on the unit circle does not exceed 1", r.trace);
  thm3_zeros_from_theta(r, *r.theta_star);
  certify(r);
  return r;
}

}  // namespace detail

inline WitnessReport witness_thm3(double a, double b, const WitnessOptions& opt = {}) {
  if (!(std::abs(b) + 2 * std::abs(a) > 1)) throw DomainError("witness_thm3 requires |b| + 2|a| > 1");
  WitnessReport r;
  r.family = WitnessFamily::Thm3;
  r.a = a, r.b = b;
  if (std::abs(a) <= 1) {
    if (b == 0 && std::abs(a) <= 0.5) throw DomainError("b = 0 requires |a| > 1/2");
    r.case_tag = "Thm3-case1";
    return detail::thm3_case1(std::move(r), opt);
  }
  if (std::abs(b) < 1) {
    r.case_tag = "Thm3-case2";
    return detail::thm3_case2(std::move(r));
  }
  if (2 + std::abs(b) > 2 * std::abs(a)) {
    r.case_tag = "Thm3-case3a";
    return detail::thm3_case1(std::move(r), opt);
  }
  r.case_tag = "Thm3-case3b";
  return detail::thm3_case3b(std::move(r), opt);
}

// --- empirical check -----------------------------------------------------------

inline Family<Rational> witness_family(const WitnessReport& r) {
  const Rational a = to_rational(r.a), b = to_rational(r.b);
  switch (r.family) {
    case WitnessFamily::Thm1: return Thm1<Rational>{a, b};
    case WitnessFamily::Thm2: return Thm2<Rational>{a, b, to_rational(r.c)};
    default: return Thm3<Rational>{a, b};
  }
}

/// Generates P_n up to n_max: the first n with a non-real zero, and the
/// distance from z* to the zeros of P_20 and P_{n_max}. The scan for the
/// first index stops at the first hit.
inline WitnessReport verify_witness(WitnessReport r, int n_max = witness_defaults::n_max) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  if (!r.certified()) throw DomainError("witness report fails its static checks");
  const auto seq = generate<Rational>(witness_family(r), n_max);
  // Some members vanish identically (e.g. thm3 with a = -1, b = 0 has P_1 = 0).
  auto zeros_of = [&](int n) {
    const auto& p = seq[static_cast<std::size_t>(n)];
    return p.is_zero() ? std::vector<std::complex<double>>{} : all_roots(p).roots;
  };
  auto dist = [&](int n) {
    double d = INFINITY;
    for (auto z : zeros_of(n)) d = std::min(d, std::abs(z - r.z_star));
    return d;
  };
  WitnessEmpirical e;
  e.n_max = n_max;
  for (int n = 1; n <= n_max && e.n_found == 0; ++n) {
    for (auto z : zeros_of(n))
      if (std::abs(z.imag()) > witness_defaults::empirical_imag) {
        e.n_found = n;
        break;
      }
  }
  if (e.n_found == 0) {
    std::ostringstream os;
    os << "no non-real zero of P_n for n <= " << n_max << " (construction bug or n_max too small)";
    throw VerificationFailureError(os.str());
  }
  if (n_max >= 20) e.dist_at_20 = dist(20);
  e.dist_to_zstar = n_max == 20 ? *e.dist_at_20 : dist(n_max);
  e.distance_shrank = n_max > 20 && e.dist_to_zstar < *e.dist_at_20;
  r.empirical = e;
  return r;
}

/// Negative control entry point: a certified-looking report for a family
/// inside its hyperbolic region must fail verification.
inline WitnessReport verify_point(WitnessFamily f, double a, double b, double c, double z_imag, int n_max) {
  WitnessReport r;
  r.family = f;
  r.a = a, r.b = b, r.c = c;
  r.case_tag = "control";
  r.z_star = {0, z_imag};
  r.checks.z_star_nonreal = r.checks.moduli_ordering_ok = r.checks.residuals_ok = true;
  return verify_witness(r, n_max);
}

}  // namespace rz
