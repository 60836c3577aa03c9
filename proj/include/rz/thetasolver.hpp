#pragma once

// Trigonometric root equations for the Thm1 and Thm3 families. A real zero
// z of P_n is written as z(theta) for theta in (0, pi) and the zero condition
// becomes a real equation F_n(theta) = 0 (Thm1) or G_n(theta) = 0 (Thm3),
// whose sign pattern on the grid k*pi/(n+1) forces a root per subinterval.
//
//   Thm1: z(theta) = 2a cos^2 - 2 cos sqrt(a^2 cos^2 + b),  tau = 1/sqrt(a z + b)
//         F_n = (-1)^{n+1} tau^{n+1} - cos((n+1)theta) - sin((n+1)theta)(cos + 1/tau)/sin
//   Thm3: z(theta) = -2 cos theta,  t0 = -1/(b - 2a cos theta)
//         G_n = -t0^{-(n+1)} + cos((n+1)theta) + (cos - t0) sin((n+1)theta)/sin

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "rz/bracket.hpp"
#include "rz/errors.hpp"

namespace rz {

namespace theta_defaults {
inline constexpr int oversample = 8;
inline constexpr int max_oversample = 1024;
inline constexpr double grid_clearance = 1e-9;
inline constexpr double perturbation = 1e-9;
inline constexpr double boundary_tol = 1e-9;
/// Open endpoints 0 and pi are sampled this fraction of a grid cell inside.
inline constexpr double endpoint_fraction = 1e-9;
}  // namespace theta_defaults

enum class ThetaFamily { Thm1, Thm3 };

inline const char* to_string(ThetaFamily f) { return f == ThetaFamily::Thm1 ? "thm1" : "thm3"; }

struct Asymptote {
  double theta_a = 0;
  /// Grid cell (k0 pi/(n+1), (k0+1) pi/(n+1)) containing theta_a.
  int k0 = 0;
};

struct ThetaRootReport {
  ThetaFamily family = ThetaFamily::Thm1;
  double a = 0;
  double b = 0;
  int n = 0;
  std::vector<Bracket> brackets;
  std::vector<double> theta_roots;
  std::vector<double> z_roots;
  std::optional<Asymptote> asymptote;
  int root_count = 0;
  /// Parameter nudges applied before solving, e.g. "a += 1e-09".
  std::vector<std::string> perturbations;
  bool boundary_mode = false;
  /// Samples per grid cell in the pass that produced the roots.
  int oversample = theta_defaults::oversample;
};

// ---------------------------------------------------------------------------
// Thm1

namespace detail {

template <class S>
S z_theta_thm1(double a, double b, S theta) {
  using std::cos, std::sin, std::sqrt;
  const S c = cos(theta);
  const S rad = S(a * a) * c * c + S(b);
  if (value_of(rad) < 0) throw DomainError("a^2 cos^2(theta) + b is negative");
  return S(2 * a) * c * c - S(2) * c * sqrt(rad);
}

template <class S>
S tau_thm1(double a, double b, S theta) {
  using std::cos, std::sin, std::sqrt;
  const S w = S(a) * z_theta_thm1(a, b, theta) + S(b);
  if (!(value_of(w) > 0)) throw DomainError("a z(theta) + b must be positive");
  return S(1) / sqrt(w);
}

template <class S>
S dirichlet_ratio(int n, S theta) {
  using std::cos, std::sin, std::sqrt;
  // sin((n+1) theta) / sin(theta)
  return sin(S(n + 1) * theta) / sin(theta);
}

template <class S>
S F_n_thm1(double a, double b, int n, S theta) {
  using std::cos, std::sin, std::sqrt;
  if (!(value_of(theta) > 0 && value_of(theta) < std::numbers::pi)) throw DomainError("theta must lie strictly inside (0, pi)");
  const S tau = tau_thm1(a, b, theta);
  const S lead = powi(tau, n + 1);
  return ((n + 1) % 2 == 0 ? lead : -lead) - cos(S(n + 1) * theta) -
         dirichlet_ratio(n, theta) * (cos(theta) + S(1) / tau);
}

}  // namespace detail

inline double z_theta_thm1(double a, double b, double theta) { return detail::z_theta_thm1(a, b, theta); }
inline double tau_thm1(double a, double b, double theta) { return detail::tau_thm1(a, b, theta); }
inline double F_n_thm1(double a, double b, int n, double theta) { return detail::F_n_thm1(a, b, n, theta); }

/// Image of (0, pi) under the Thm1 z(theta).
inline std::pair<double, double> thm1_interval(double a, double b) {
  const double r = std::sqrt(a * a + b);
  return {2 * a - 2 * r, 2 * a + 2 * r};
}

// ---------------------------------------------------------------------------
// Thm3

inline double z_theta_thm3(double theta) { return -2 * std::cos(theta); }

namespace detail {

inline double pole_tolerance(double a, double b) { return 1e-14 * std::max({1.0, std::abs(b), std::abs(2 * a)}); }

template <class S>
S t0_thm3(double a, double b, S theta) {
  using std::cos, std::sin, std::sqrt;
  const S den = S(b) - S(2 * a) * cos(theta);
  if (std::abs(value_of(den)) <= pole_tolerance(a, b)) {
    const double theta_a = a != 0 && std::abs(b / (2 * a)) <= 1 ? std::acos(b / (2 * a)) : NAN;
    throw PoleError("t0(theta) has a pole: b - 2a cos(theta) = 0", theta_a);
  }
  return S(-1) / den;
}

template <class S>
S G_n_thm3(double a, double b, int n, S theta) {
  using std::cos, std::sin, std::sqrt;
  if (!(value_of(theta) > 0 && value_of(theta) < std::numbers::pi)) throw DomainError("theta must lie strictly inside (0, pi)");
  const S t0 = t0_thm3(a, b, theta);
  const S inv = powi(S(1) / t0, n + 1);
  return -inv + cos(S(n + 1) * theta) + (cos(theta) - t0) * dirichlet_ratio(n, theta);
}

/// (b - 2a cos theta) G_n, which equals |1 + u e^{i theta}|^2 P_n(-2 cos theta)
/// with u = b - 2a cos theta: same sign changes as G_n on either side of the
/// pole, but finite through it.
template <class S>
S H_n_thm3(double a, double b, int n, S theta) {
  using std::cos, std::sin, std::sqrt;
  if (!(value_of(theta) > 0 && value_of(theta) < std::numbers::pi)) throw DomainError("theta must lie strictly inside (0, pi)");
  const S u = S(b) - S(2 * a) * cos(theta);
  // -u t0^{-(n+1)} = -(-1)^{n+1} u^{n+2}
  const S lead = u * powi(u, n + 1);
  return ((n + 1) % 2 == 0 ? -lead : lead) + u * cos(S(n + 1) * theta) + (u * cos(theta) + S(1)) * dirichlet_ratio(n, theta);
}

}  // namespace detail

inline double t0_thm3(double a, double b, double theta) { return detail::t0_thm3(a, b, theta); }
inline double G_n_thm3(double a, double b, int n, double theta) { return detail::G_n_thm3(a, b, n, theta); }
inline double H_n_thm3(double a, double b, int n, double theta) { return detail::H_n_thm3(a, b, n, theta); }

struct ThetaLimits {
  double left = 0;
  double right = 0;
  /// The closed form sums to zero up to rounding (its terms cancel).
  bool left_cancels = false;
  bool right_cancels = false;
};

/// One-sided limits of G_n at theta -> 0+ and theta -> pi-.
inline ThetaLimits limits_thm3(double a, double b, int n) {
  const double dl = b - 2 * a, dr = b + 2 * a;
  if (dl == 0 || dr == 0) throw DomainError("limits need b != +-2a");
  const double sn = n % 2 == 0 ? 1 : -1;
  ThetaLimits out;
  const double l1 = n + 2, l2 = (n + 1) / dl, l3 = sn * std::pow(dl, n + 1);
  const double r1 = -sn * (n + 2), r2 = sn * (n + 1) / dr, r3 = sn * std::pow(dr, n + 1);
  out.left = l1 + l2 + l3;
  out.right = r1 + r2 + r3;
  const double eps = 64 * 2.220446049250313e-16;
  out.left_cancels = std::abs(out.left) <= eps * (std::abs(l1) + std::abs(l2) + std::abs(l3));
  out.right_cancels = std::abs(out.right) <= eps * (std::abs(r1) + std::abs(r2) + std::abs(r3));
  if (out.left_cancels) out.left = 0;
  if (out.right_cancels) out.right = 0;
  return out;
}

// ---------------------------------------------------------------------------
// Solvers

namespace detail {

struct Segment {
  double lo, hi;
};

/// Brackets every sign change of f on the segments, sampling each grid cell
/// k pi/(n+1) .. (k+1) pi/(n+1) at `per_cell` points, and refines them.
template <class F>
void collect_roots(F&& f, const std::vector<Segment>& segments, int n, int per_cell, ThetaRootReport& rep) {
  const double h = std::numbers::pi / (n + 1);
  rep.brackets.clear();
  rep.theta_roots.clear();
  for (const auto& seg : segments) {
    std::vector<double> knots{seg.lo};
    for (int k = 1; k <= n; ++k)
      if (k * h > seg.lo && k * h < seg.hi) knots.push_back(k * h);
    knots.push_back(seg.hi);
    std::vector<double> xs;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
      for (int j = 0; j < per_cell; ++j) xs.push_back(knots[i] + (knots[i + 1] - knots[i]) * j / per_cell);
    xs.push_back(seg.hi);
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      try {
        fs[i] = value_of(f(xs[i]));
      } catch (const DomainError&) {
        fs[i] = NAN;  // pole or branch failure at a sample; never bracketed
      }
    }
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (!std::isfinite(fs[i]) || !std::isfinite(fs[i + 1])) continue;
      if (fs[i] == 0) {
        rep.brackets.push_back({xs[i], xs[i]});
        rep.theta_roots.push_back(xs[i]);
        continue;
      }
      if (fs[i + 1] == 0 || (fs[i] < 0) == (fs[i + 1] < 0)) continue;
      const auto r = refine_root(f, xs[i], xs[i + 1], fs[i]);
      // A sign change across a pole refines to a point where |f| blows up.
      if (!(std::abs(r.fx) <= 1e-6 * std::max({1.0, std::abs(fs[i]), std::abs(fs[i + 1])}))) continue;
      rep.brackets.push_back({xs[i], xs[i + 1]});
      rep.theta_roots.push_back(r.x);
    }
    if (fs.back() == 0) {
      rep.brackets.push_back({xs.back(), xs.back()});
      rep.theta_roots.push_back(xs.back());
    }
  }
  std::sort(rep.theta_roots.begin(), rep.theta_roots.end());
  rep.theta_roots.erase(std::unique(rep.theta_roots.begin(), rep.theta_roots.end()), rep.theta_roots.end());
}

template <class F>
void solve_adaptive(F&& f, const std::vector<Segment>& segments, int n, ThetaRootReport& rep) {
  for (int m = theta_defaults::oversample;; m *= 2) {
    collect_roots(f, segments, n, m, rep);
    rep.oversample = m;
    if (static_cast<int>(rep.theta_roots.size()) >= n || m >= theta_defaults::max_oversample) break;
  }
  rep.root_count = static_cast<int>(rep.theta_roots.size());
  if (rep.root_count < n && !rep.boundary_mode)
    throw BracketFailureError("found " + std::to_string(rep.root_count) + " theta-roots, expected " + std::to_string(n),
                              rep.root_count, n);
}

inline std::vector<Segment> open_interval(int n) {
  const double inset = theta_defaults::endpoint_fraction * std::numbers::pi / (n + 1);
  return {{inset, std::numbers::pi - inset}};
}

}  // namespace detail

/// Solves F_n = 0 on (0, pi) for b >= 1 + 2|a|.
inline ThetaRootReport solve_theta_thm1(double a, double b, int n) {
  if (n < 0) throw DomainError("n must be non-negative");
  const double d = b - (1 + 2 * std::abs(a));
  if (d < -theta_defaults::boundary_tol) throw DomainError("thm1 theta solver needs b >= 1 + 2|a|");
  ThetaRootReport rep;
  rep.family = ThetaFamily::Thm1;
  rep.a = a;
  rep.b = b;
  rep.n = n;
  rep.boundary_mode = std::abs(d) < theta_defaults::boundary_tol;
  if (n == 0) return rep;
  detail::solve_adaptive([&](auto th) { return detail::F_n_thm1(a, b, n, th); }, detail::open_interval(n), n, rep);
  for (double th : rep.theta_roots) rep.z_roots.push_back(z_theta_thm1(a, b, th));
  return rep;
}

/// Solves G_n = 0 on (0, pi) for |b| <= 1 - 2|a|, splitting at the pole of
/// t0 when |b| < 2|a|. At a = b = 0 (t0 undefined) the pole-cleared form is
/// sin((n+1) theta)/sin(theta) and is solved directly.
inline ThetaRootReport solve_theta_thm3(double a, double b, int n) {
  if (n < 0) throw DomainError("n must be non-negative");
  const double d = (1 - 2 * std::abs(a)) - std::abs(b);
  if (d < -theta_defaults::boundary_tol) throw DomainError("thm3 theta solver needs |b| <= 1 - 2|a|");
  ThetaRootReport rep;
  rep.family = ThetaFamily::Thm3;
  rep.n = n;
  rep.boundary_mode = std::abs(d) < theta_defaults::boundary_tol ||
                      std::abs(std::abs(b) - 2 * std::abs(a)) < theta_defaults::boundary_tol;
  const double h = std::numbers::pi / (n + 1);
  auto segments = detail::open_interval(n);
  if (std::abs(b) < 2 * std::abs(a)) {
    double theta_a = std::acos(b / (2 * a));
    const double k = theta_a / h;
    if (std::abs(k - std::round(k)) * h < theta_defaults::grid_clearance) {
      a += theta_defaults::perturbation;
      rep.perturbations.push_back("a += 1e-09");
      theta_a = std::acos(b / (2 * a));
    }
    rep.asymptote = Asymptote{theta_a, static_cast<int>(std::floor(theta_a / h))};
    const double lo = segments[0].lo, hi = segments[0].hi;
    segments = {{lo, theta_a}, {theta_a, hi}};
  }
  rep.a = a;
  rep.b = b;
  if (n == 0) return rep;
  // Each side of the pole is bracketed on the pole-cleared H_n, whose sign
  // there is sign(u) * sign(G_n); roots at or next to theta_a stay visible.
  detail::solve_adaptive([&](auto th) { return detail::H_n_thm3(a, b, n, th); }, segments, n, rep);
  for (double th : rep.theta_roots) rep.z_roots.push_back(z_theta_thm3(th));
  return rep;
}

/// Largest gap between consecutive sorted zeros, counting the gaps to the
/// interval endpoints.
inline double density_stats(std::vector<double> z, double lo, double hi) {
  if (z.size() < 2) throw UndefinedStatisticError("density statistics need at least two roots");
  std::sort(z.begin(), z.end());
  double gap = std::max(z.front() - lo, hi - z.back());
  for (std::size_t i = 1; i < z.size(); ++i) gap = std::max(gap, z[i] - z[i - 1]);
  return gap;
}

inline double density_stats(const ThetaRootReport& rep) {
  const auto [lo, hi] = rep.family == ThetaFamily::Thm1 ? thm1_interval(rep.a, rep.b) : std::pair{-2.0, 2.0};
  return density_stats(rep.z_roots, lo, hi);
}

}  // namespace rz
