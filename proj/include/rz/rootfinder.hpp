#pragma once

// All complex zeros of a real polynomial (Aberth-Ehrlich simultaneous
// iteration in binary128 with a Newton polish), hyperbolicity verdicts, and an
// exact Sturm-chain real-root counter over the rationals.
//
// The families studied here have monomial coefficients spanning 20+ orders of
// magnitude by degree 60, so double precision cannot separate real roots from
// nearly real pairs. Iterating in binary128 on coefficients that are exact
// (or quad-accurate) keeps |Im| of real roots far below 1e-8.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "rz/mpreal.hpp"
#include "rz/polynomial.hpp"

namespace rz {

namespace defaults {
inline constexpr double residual_tol = 1e-12;
inline constexpr double tol_real = 1e-8;
inline constexpr double interval_slack = 1e-6;
inline constexpr int iteration_cap = 500;
/// Roots whose condition estimate times the working epsilon exceeds this are
/// recomputed at higher precision.
inline constexpr double forward_tol = 0x1p-53;
inline constexpr long max_bits = 4096;
}  // namespace defaults

enum class SolveMode { Floating, ExactAssisted };

struct ComplexRootSet {
  /// Sorted by (Re, Im).
  std::vector<std::complex<double>> roots;
  /// |p(z)| / sum_k |c_k| |z|^k at each root.
  std::vector<double> residuals;
  SolveMode mode = SolveMode::Floating;
  double tol = defaults::residual_tol;
  int iterations = 0;
  /// Mantissa bits of the last iteration stage (113 = binary128 only).
  long precision_bits = 113;

  std::size_t size() const { return roots.size(); }
  bool empty() const { return roots.empty(); }
};

namespace detail {

inline constexpr quad quad_eps = 1.92592994438723585305597794258492732e-34;

struct Eval {
  qcomplex p;
  qcomplex dp;
  quad scale;  // sum |c_k| |z|^k
};

inline Eval horner(const std::vector<quad>& c, const qcomplex& z) {
  const std::size_t n = c.size() - 1;
  qcomplex p(c[n]), dp;
  quad s = qabs(c[n]);
  const quad r = abs(z);
  for (std::size_t k = n; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + qcomplex(c[k]);
    s = s * r + qabs(c[k]);
  }
  return {p, dp, s};
}

inline quad backward_residual(const Eval& e) {
  return e.scale > 0 ? abs(e.p) / e.scale : abs(e.p);
}

/// Unique positive root of |c_n| x^n - sum_{k<n} |c_k| x^k.
inline double cauchy_radius(const std::vector<quad>& c) {
  const std::size_t n = c.size() - 1;
  const double lead = std::log(static_cast<double>(qabs(c[n])));
  std::vector<std::pair<double, double>> terms;  // (log ratio, k - n)
  double log_hi = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (c[k] == 0) continue;
    const double lr = static_cast<double>(logq(qabs(c[k]))) - lead;
    terms.emplace_back(lr, static_cast<double>(k) - static_cast<double>(n));
    log_hi = std::max(log_hi, lr);
  }
  if (terms.empty()) return 0;
  // h(x) = 1 - sum r_k x^{k-n} is increasing in x.
  auto h = [&](double lx) {
    double s = 0;
    for (const auto& [lr, e] : terms) s += std::exp(std::min(700.0, lr + e * lx));
    return 1 - s;
  };
  double lo = -745, hi = std::log1p(std::exp(log_hi)) + 1e-9;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0 ? lo : hi) = mid;
  }
  return std::exp(hi);
}

/// Hardware extended-precision Aberth pass that only localizes the roots; the
/// binary128 pass finishes them. Returns the number of sweeps.
inline int aberth_long_double(const std::vector<quad>& cq, std::vector<std::complex<long double>>& w) {
  using cl = std::complex<long double>;
  const std::size_t n = w.size();
  std::vector<long double> c(cq.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = static_cast<long double>(cq[k]);
  const long double eps = std::numeric_limits<long double>::epsilon();
  std::vector<char> done(n, 0);
  int it = 0;
  for (; it < defaults::iteration_cap; ++it) {
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      cl p = c[n], dp = 0;
      long double s = std::abs(c[n]);
      const long double r = std::abs(w[i]);
      for (std::size_t k = n; k-- > 0;) {
        dp = dp * w[i] + p;
        p = p * w[i] + c[k];
        s = s * r + std::abs(c[k]);
      }
      if (!std::isfinite(s)) {
        done[i] = 1;
        continue;
      }
      if (std::abs(p) <= 16 * static_cast<long double>(n + 1) * eps * s) {
        done[i] = 1;
        continue;
      }
      all_done = false;
      if (dp == cl(0)) {
        w[i] += cl(1e-3L * (1 + r), 1e-3L);
        continue;
      }
      const cl ratio = p / dp;
      cl sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) sum += 1.0L / (w[i] - w[j]);
      const cl denom = 1.0L - ratio * sum;
      const cl corr = denom == cl(0) ? ratio : ratio / denom;
      w[i] -= corr;
      if (std::abs(corr) <= 16 * eps * std::max<long double>(1, std::abs(w[i]))) done[i] = 1;
    }
    if (all_done) break;
  }
  return it;
}

/// log2 of sum |c_k||z|^k / (|z| |p'(z)|), the relative condition number of a
/// simple root under relative coefficient perturbations.
inline double log2_condition(const Eval& e, const qcomplex& z) {
  const quad dz = abs(e.dp) * std::max<quad>(abs(z), 1e-300);
  if (dz == 0) return INFINITY;
  return static_cast<double>(log2q(e.scale) - log2q(dz));
}

// In-place MPFR kernels: the operator forms in mpreal.hpp allocate per
// operation, which dominates at the degrees used here.
struct MpWork {
  explicit MpWork(long bits)
      : pr(bits), pi(bits), dr(bits), di(bits), s(bits), r(bits), t1(bits), t2(bits), t3(bits), t4(bits) {}
  MpReal pr, pi, dr, di, s, r, t1, t2, t3, t4;
};

/// (xr, xi) <- (xr, xi) * (zr, zi) + (ar, ai).
inline void mul_add(MpReal& xr, MpReal& xi, const MpReal& zr, const MpReal& zi, mpfr_srcptr ar, mpfr_srcptr ai,
                    MpWork& w) {
  mpfr_mul(w.t1.get(), xr.get(), zr.get(), MPFR_RNDN);
  mpfr_mul(w.t2.get(), xi.get(), zi.get(), MPFR_RNDN);
  mpfr_mul(w.t3.get(), xr.get(), zi.get(), MPFR_RNDN);
  mpfr_mul(w.t4.get(), xi.get(), zr.get(), MPFR_RNDN);
  mpfr_sub(xr.get(), w.t1.get(), w.t2.get(), MPFR_RNDN);
  if (ar) mpfr_add(xr.get(), xr.get(), ar, MPFR_RNDN);
  mpfr_add(xi.get(), w.t3.get(), w.t4.get(), MPFR_RNDN);
  if (ai) mpfr_add(xi.get(), xi.get(), ai, MPFR_RNDN);
}

/// Leaves p, p' and sum |c_k||z|^k in w.pr/w.pi, w.dr/w.di, w.s.
inline void horner_mp(const std::vector<MpReal>& c, const MpReal& zr, const MpReal& zi, MpWork& w) {
  const std::size_t n = c.size() - 1;
  mpfr_set(w.pr.get(), c[n].get(), MPFR_RNDN);
  mpfr_set_zero(w.pi.get(), 1);
  mpfr_set_zero(w.dr.get(), 1);
  mpfr_set_zero(w.di.get(), 1);
  mpfr_abs(w.s.get(), c[n].get(), MPFR_RNDN);
  mpfr_hypot(w.r.get(), zr.get(), zi.get(), MPFR_RNDN);
  for (std::size_t k = n; k-- > 0;) {
    mul_add(w.dr, w.di, zr, zi, w.pr.get(), w.pi.get(), w);
    mul_add(w.pr, w.pi, zr, zi, c[k].get(), nullptr, w);
    mpfr_mul(w.s.get(), w.s.get(), w.r.get(), MPFR_RNDN);
    if (!mpfr_zero_p(c[k].get())) {
      mpfr_abs(w.t1.get(), c[k].get(), MPFR_RNDN);
      mpfr_add(w.s.get(), w.s.get(), w.t1.get(), MPFR_RNDN);
    }
  }
}

inline double log2_of(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return -INFINITY;
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, x, MPFR_RNDN);
  return std::log2(std::abs(m)) + static_cast<double>(e);
}

inline double log2_hypot(const MpReal& a, const MpReal& b, MpReal& tmp) {
  mpfr_hypot(tmp.get(), a.get(), b.get(), MPFR_RNDN);
  return log2_of(tmp.get());
}

/// (qr, qi) <- (ar, ai) / (br, bi).
inline void cdiv(MpReal& qr, MpReal& qi, const MpReal& ar, const MpReal& ai, const MpReal& br, const MpReal& bi,
                 MpWork& w) {
  mpfr_sqr(w.t1.get(), br.get(), MPFR_RNDN);
  mpfr_sqr(w.t2.get(), bi.get(), MPFR_RNDN);
  mpfr_add(w.t1.get(), w.t1.get(), w.t2.get(), MPFR_RNDN);
  mpfr_mul(w.t2.get(), ar.get(), br.get(), MPFR_RNDN);
  mpfr_mul(w.t3.get(), ai.get(), bi.get(), MPFR_RNDN);
  mpfr_add(w.t2.get(), w.t2.get(), w.t3.get(), MPFR_RNDN);
  mpfr_mul(w.t3.get(), ai.get(), br.get(), MPFR_RNDN);
  mpfr_mul(w.t4.get(), ar.get(), bi.get(), MPFR_RNDN);
  mpfr_sub(w.t3.get(), w.t3.get(), w.t4.get(), MPFR_RNDN);
  mpfr_div(qr.get(), w.t2.get(), w.t1.get(), MPFR_RNDN);
  mpfr_div(qi.get(), w.t3.get(), w.t1.get(), MPFR_RNDN);
}

/// Aberth iteration at `bits` started from `w`; returns the worst log2
/// condition estimate at the final roots.
inline double aberth_mp(const std::vector<MpReal>& c, std::vector<qcomplex>& roots, std::vector<quad>& res,
                        long bits, int& iterations) {
  const std::size_t n = roots.size();
  std::vector<MpReal> xr, xi;
  for (const auto& z : roots) xr.emplace_back(z.re, bits), xi.emplace_back(z.im, bits);
  MpWork w(bits);
  MpReal nr(bits), ni(bits), sr(bits), si(bits), dr(bits), di(bits), one(1.0, bits), zero(bits), tmp(bits);
  const double log2_res_tol = std::log2(4.0 * static_cast<double>(n + 1)) - static_cast<double>(bits);
  const double log2_step_tol = 4.0 - static_cast<double>(bits);
  std::vector<char> done(n, 0);
  int it = 0;
  for (; it < defaults::iteration_cap; ++it) {
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      horner_mp(c, xr[i], xi[i], w);
      if (log2_hypot(w.pr, w.pi, tmp) - log2_of(w.s.get()) <= log2_res_tol) {
        done[i] = 1;
        continue;
      }
      all_done = false;
      if (mpfr_zero_p(w.dr.get()) && mpfr_zero_p(w.di.get())) {
        mpfr_add_d(xr[i].get(), xr[i].get(), 1e-20, MPFR_RNDN);
        mpfr_add_d(xi[i].get(), xi[i].get(), 1e-20, MPFR_RNDN);
        continue;
      }
      // ratio = p / p' kept in (nr, ni).
      MpReal pr = w.pr, pi = w.pi, pdr = w.dr, pdi = w.di;
      cdiv(nr, ni, pr, pi, pdr, pdi, w);
      mpfr_set_zero(sr.get(), 1);
      mpfr_set_zero(si.get(), 1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        mpfr_sub(dr.get(), xr[i].get(), xr[j].get(), MPFR_RNDN);
        mpfr_sub(di.get(), xi[i].get(), xi[j].get(), MPFR_RNDN);
        // 1/(dr + i di) = (dr - i di)/|d|^2
        mpfr_sqr(w.t1.get(), dr.get(), MPFR_RNDN);
        mpfr_sqr(w.t2.get(), di.get(), MPFR_RNDN);
        mpfr_add(w.t1.get(), w.t1.get(), w.t2.get(), MPFR_RNDN);
        mpfr_div(w.t2.get(), dr.get(), w.t1.get(), MPFR_RNDN);
        mpfr_div(w.t3.get(), di.get(), w.t1.get(), MPFR_RNDN);
        mpfr_add(sr.get(), sr.get(), w.t2.get(), MPFR_RNDN);
        mpfr_sub(si.get(), si.get(), w.t3.get(), MPFR_RNDN);
      }
      // denom = 1 - ratio * sum, stored in (dr, di).
      mpfr_mul(w.t1.get(), nr.get(), sr.get(), MPFR_RNDN);
      mpfr_mul(w.t2.get(), ni.get(), si.get(), MPFR_RNDN);
      mpfr_sub(w.t1.get(), w.t1.get(), w.t2.get(), MPFR_RNDN);
      mpfr_ui_sub(dr.get(), 1, w.t1.get(), MPFR_RNDN);
      mpfr_mul(w.t1.get(), nr.get(), si.get(), MPFR_RNDN);
      mpfr_mul(w.t2.get(), ni.get(), sr.get(), MPFR_RNDN);
      mpfr_add(w.t1.get(), w.t1.get(), w.t2.get(), MPFR_RNDN);
      mpfr_neg(di.get(), w.t1.get(), MPFR_RNDN);
      if (!(mpfr_zero_p(dr.get()) && mpfr_zero_p(di.get()))) {
        MpReal ar = nr, ai = ni;
        cdiv(nr, ni, ar, ai, dr, di, w);
      }
      mpfr_sub(xr[i].get(), xr[i].get(), nr.get(), MPFR_RNDN);
      mpfr_sub(xi[i].get(), xi[i].get(), ni.get(), MPFR_RNDN);
      if (log2_hypot(nr, ni, tmp) <= log2_step_tol + std::max(0.0, log2_hypot(xr[i], xi[i], tmp))) done[i] = 1;
    }
    if (all_done) break;
  }
  iterations += it;
  double worst = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    horner_mp(c, xr[i], xi[i], w);
    const double lres = log2_hypot(w.pr, w.pi, tmp) - log2_of(w.s.get());
    const double lz = std::max(log2_hypot(xr[i], xi[i], tmp), -1000.0);
    worst = std::max(worst, log2_of(w.s.get()) - log2_hypot(w.dr, w.di, tmp) - lz);
    roots[i] = MpComplex(xr[i], xi[i]).to_quad();
    res[i] = static_cast<quad>(std::exp2(std::max(lres, -16000.0)));
  }
  return worst;
}

}  // namespace detail

/// All deg(p) complex roots. Throws InconclusiveError when some residual is
/// still above `tol` after the iteration cap.
template <class T>
ComplexRootSet all_roots(const Polynomial<T>& p, double tol = defaults::residual_tol) {
  if (p.is_zero()) throw DomainError("the zero polynomial has no finite root set");
  if (!(tol > 0)) throw DomainError("root tolerance must be positive");

  ComplexRootSet out;
  out.tol = tol;
  out.mode = is_exact_v<T> ? SolveMode::ExactAssisted : SolveMode::Floating;

  std::vector<quad> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.push_back(to_quad(x));
  // Exact zeros at the origin.
  std::size_t zeros = 0;
  while (zeros + 1 < c.size() && c[zeros] == 0) ++zeros;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));
  std::vector<qcomplex> z(zeros, qcomplex(0));
  std::vector<quad> res(zeros, 0);

  const std::size_t n = c.size() - 1;
  if (n == 1) {
    z.emplace_back(-c[0] / c[1]);
    res.push_back(detail::backward_residual(detail::horner(c, z.back())));
  } else if (n >= 2) {
    const double radius = detail::cauchy_radius(c);
    const double offset = 0.4 + std::numbers::pi / (3.0 * static_cast<double>(n));
    std::vector<std::complex<long double>> w0(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double ang = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + offset;
      w0[k] = {radius * std::cos(ang), radius * std::sin(ang)};
    }
    out.iterations = detail::aberth_long_double(c, w0);
    std::vector<qcomplex> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = qcomplex(static_cast<quad>(w0[k].real()), static_cast<quad>(w0[k].imag()));
    std::vector<char> done(n, 0);
    const quad step_tol = 4 * detail::quad_eps;
    const quad res_tol = 4 * static_cast<quad>(n + 1) * detail::quad_eps;
    int it = 0;
    for (; it < defaults::iteration_cap; ++it) {
      bool all_done = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        const auto e = detail::horner(c, w[i]);
        if (detail::backward_residual(e) <= res_tol) {
          done[i] = 1;
          continue;
        }
        all_done = false;
        qcomplex corr;
        if (e.dp.re == 0 && e.dp.im == 0) {
          // Stationary point: nudge off it.
          corr = qcomplex(1e-3 * (1 + static_cast<double>(abs(w[i]))), 1e-3);
        } else {
          const qcomplex ratio = e.p / e.dp;
          qcomplex sum;
          for (std::size_t j = 0; j < n; ++j)
            if (j != i) sum += qcomplex(1) / (w[i] - w[j]);
          const qcomplex denom = qcomplex(1) - ratio * sum;
          corr = (denom.re == 0 && denom.im == 0) ? ratio : ratio / denom;
        }
        w[i] -= corr;
        const quad mag = abs(w[i]);
        if (abs(corr) <= step_tol * (mag > 1 ? mag : quad(1))) done[i] = 1;
      }
      if (all_done) break;
    }
    out.iterations += it;
    for (auto& root : w) {
      auto e = detail::horner(c, root);
      for (int polish = 0; polish < 3; ++polish) {
        if (e.dp.re == 0 && e.dp.im == 0) break;
        const qcomplex cand = root - e.p / e.dp;
        const auto ec = detail::horner(c, cand);
        if (!(detail::backward_residual(ec) < detail::backward_residual(e))) break;
        root = cand;
        e = ec;
      }
      z.push_back(root);
      res.push_back(detail::backward_residual(e));
    }
    // Escalate when binary128 cannot resolve the roots: precision grows with
    // the worst condition estimate, iterating from the current roots.
    double worst_cond = -INFINITY;
    for (std::size_t i = zeros; i < z.size(); ++i)
      worst_cond = std::max(worst_cond, detail::log2_condition(detail::horner(c, z[i]), z[i]));
    long bits = 113;
    const double log2_tol = std::log2(defaults::forward_tol);
    if (worst_cond - 112 > log2_tol) {
      std::vector<qcomplex> w(z.begin() + static_cast<std::ptrdiff_t>(zeros), z.end());
      std::vector<quad> wr(w.size(), 0);
      while (worst_cond - static_cast<double>(bits) > log2_tol && bits < defaults::max_bits) {
        const double want = std::isfinite(worst_cond) ? worst_cond - log2_tol + 64 : 2.0 * static_cast<double>(bits);
        bits = std::min<long>(defaults::max_bits, std::max<long>(2 * bits, static_cast<long>(std::ceil(want))));
        std::vector<MpReal> cm;
        cm.reserve(c.size());
        for (std::size_t k = zeros; k < p.coeffs().size(); ++k) cm.push_back(to_mp(p.coeffs()[k], bits));
        worst_cond = detail::aberth_mp(cm, w, wr, bits, out.iterations);
      }
      std::copy(w.begin(), w.end(), z.begin() + static_cast<std::ptrdiff_t>(zeros));
      std::copy(wr.begin(), wr.end(), res.begin() + static_cast<std::ptrdiff_t>(zeros));
      out.precision_bits = bits;
    }
  }

  std::vector<std::size_t> order(z.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::complex<double>> zd(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) zd[i] = z[i].to_std();
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (zd[x].real() != zd[y].real()) return zd[x].real() < zd[y].real();
    return zd[x].imag() < zd[y].imag();
  });
  double worst = 0;
  for (std::size_t i : order) {
    out.roots.push_back(zd[i]);
    out.residuals.push_back(static_cast<double>(res[i]));
    worst = std::max(worst, static_cast<double>(res[i]));
  }
  if (!(worst <= tol))
    throw InconclusiveError("root iteration did not reach the residual tolerance", out.roots, worst);
  return out;
}

// ---------------------------------------------------------------------------
// Exact real-root counting

namespace detail {

inline int sign_of(const Rational& x) { return sgn(x); }

inline std::vector<Polynomial<Rational>> sturm_chain(const Polynomial<Rational>& p) {
  auto normalized = [](Polynomial<Rational> q) {
    if (q.is_zero()) return q;
    Rational lc = abs(q.leading());
    return q * Rational(Rational(1) / lc);
  };
  std::vector<Polynomial<Rational>> chain{normalized(p)};
  if (p.degree() < 1) return chain;
  chain.push_back(normalized(p.derivative()));
  while (chain.back().degree() > 0) {
    auto r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(normalized(-r));
  }
  return chain;
}

inline int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

inline int variations_at(const std::vector<Polynomial<Rational>>& chain, const Rational& x) {
  std::vector<int> s;
  for (const auto& q : chain) s.push_back(sign_of(q(x)));
  return variations(s);
}

inline int variations_at_infinity(const std::vector<Polynomial<Rational>>& chain, bool positive) {
  std::vector<int> s;
  for (const auto& q : chain) {
    if (q.is_zero()) continue;
    int sg = sign_of(q.leading());
    if (!positive && q.degree() % 2 == 1) sg = -sg;
    s.push_back(sg);
  }
  return variations(s);
}

/// Real roots counted with multiplicity over (lo, hi); nullopt bounds mean
/// -inf / +inf. Each pass counts the distinct roots of g_k, where
/// g_{k+1} = gcd(g_k, g_k') is the last element of g_k's Sturm chain.
inline int count_with_multiplicity(Polynomial<Rational> g, const std::optional<Rational>& lo,
                                   const std::optional<Rational>& hi) {
  int total = 0;
  while (g.degree() >= 1) {
    const auto chain = sturm_chain(g);
    const int vlo = lo ? variations_at(chain, *lo) : variations_at_infinity(chain, false);
    const int vhi = hi ? variations_at(chain, *hi) : variations_at_infinity(chain, true);
    total += vlo - vhi;
    g = chain.back();
  }
  return total;
}

}  // namespace detail

/// Real roots of p in the open interval (lo, hi), counted with multiplicity.
inline int count_real_roots_exact(const Polynomial<Rational>& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw DomainError("the zero polynomial has no finite root count");
  if (!(lo < hi)) throw DomainError("interval must satisfy lo < hi");
  const Rational nudge = (hi - lo) / Rational(1 << 30);
  if (sgn(p(lo)) == 0)
    throw EndpointRootError("lower endpoint is a root", to_double(lo), to_double(lo - nudge));
  if (sgn(p(hi)) == 0)
    throw EndpointRootError("upper endpoint is a root", to_double(hi), to_double(hi + nudge));
  return detail::count_with_multiplicity(p, lo, hi);
}

inline int count_real_roots_exact(const Polynomial<Rational>& p, double lo, double hi) {
  return count_real_roots_exact(p, to_rational(lo), to_rational(hi));
}

/// Real roots over the whole line, counted with multiplicity.
inline int count_real_roots_exact(const Polynomial<Rational>& p) {
  if (p.is_zero()) throw DomainError("the zero polynomial has no finite root count");
  return detail::count_with_multiplicity(p, std::nullopt, std::nullopt);
}

// ---------------------------------------------------------------------------
// Verdicts

enum class Hyperbolicity { AllReal, NonRealFound, Inconclusive };

inline const char* to_string(Hyperbolicity h) {
  switch (h) {
    case Hyperbolicity::AllReal: return "AllReal";
    case Hyperbolicity::NonRealFound: return "NonRealFound";
    default: return "Inconclusive";
  }
}

struct HyperbolicityVerdict {
  Hyperbolicity status = Hyperbolicity::Inconclusive;
  double max_imag = 0;
  /// Sturm count over the real line (with multiplicity), exact mode only.
  std::optional<int> certificate;
  ComplexRootSet roots;
  std::string detail;
};

inline bool is_nonreal(std::complex<double> z, double tol_real) {
  return std::abs(z.imag()) > tol_real * std::max(1.0, std::abs(z));
}

/// Floating classification from computed roots; for rational input the
/// verdict comes from the Sturm count instead.
template <class T>
HyperbolicityVerdict is_hyperbolic(const Polynomial<T>& p, double tol_real = defaults::tol_real,
                                   double tol = defaults::residual_tol) {
  if (p.is_zero()) throw DomainError("hyperbolicity of the zero polynomial is undefined");
  HyperbolicityVerdict v;
  bool solved = false;
  try {
    v.roots = all_roots(p, tol);
    solved = true;
  } catch (const InconclusiveError& e) {
    v.detail = e.what();
    for (auto z : e.iterates()) v.max_imag = std::max(v.max_imag, std::abs(z.imag()));
  }
  if (solved) {
    bool any = false;
    for (auto z : v.roots.roots) {
      v.max_imag = std::max(v.max_imag, std::abs(z.imag()));
      any = any || is_nonreal(z, tol_real);
    }
    v.status = any ? Hyperbolicity::NonRealFound : Hyperbolicity::AllReal;
  }
  if constexpr (is_exact_v<T>) {
    const int count = count_real_roots_exact(p);
    v.certificate = count;
    const auto exact = count == p.degree() ? Hyperbolicity::AllReal : Hyperbolicity::NonRealFound;
    if (solved && exact != v.status) v.detail = "floating verdict overridden by Sturm count";
    v.status = exact;
  }
  return v;
}

/// Every root within `slack` of the real segment [lo, hi].
inline bool roots_in_interval(const ComplexRootSet& rs, double lo, double hi,
                              double slack = defaults::interval_slack) {
  if (!(lo < hi)) throw DomainError("interval must satisfy lo < hi");
  for (auto z : rs.roots)
    if (std::abs(z.imag()) > slack || z.real() < lo - slack || z.real() > hi + slack) return false;
  return true;
}

/// Largest distance between matched roots, matching each root of `x` greedily
/// to its nearest unused root of `y`; +inf when sizes differ.
inline double multiset_distance(const std::vector<std::complex<double>>& x,
                                const std::vector<std::complex<double>>& y) {
  if (x.size() != y.size()) return INFINITY;
  std::vector<char> used(y.size(), 0);
  double d = 0;
  for (auto u : x) {
    std::size_t best = y.size();
    double bd = INFINITY;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!used[j] && std::abs(u - y[j]) < bd) bd = std::abs(u - y[j]), best = j;
    used[best] = 1;
    d = std::max(d, bd);
  }
  return d;
}

}  // namespace rz
