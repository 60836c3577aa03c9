#pragma once

// Coefficient scalars: double, binary128 (`quad`) and exact rationals, plus
// the conversions between them and a small complex type over quad.

#include <gmpxx.h>
#include <quadmath.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include "rz/errors.hpp"

namespace rz {

using quad = __float128;
using Rational = mpq_class;

// ---------------------------------------------------------------------------
// quad helpers

inline quad qabs(quad x) { return fabsq(x); }
inline quad qsqrt(quad x) { return sqrtq(x); }
inline quad qhypot(quad x, quad y) { return hypotq(x, y); }

inline std::string to_string(quad x, int digits = 36) {
  char buf[96];
  quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, x);
  return buf;
}

/// Minimal complex arithmetic over quad; std::complex is unspecified for
/// non-standard floating types.
struct qcomplex {
  quad re = 0;
  quad im = 0;

  constexpr qcomplex() = default;
  constexpr qcomplex(quad r, quad i = 0) : re(r), im(i) {}
  explicit qcomplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_std() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  qcomplex& operator+=(const qcomplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  qcomplex& operator-=(const qcomplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  qcomplex& operator*=(const qcomplex& o) {
    const quad r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  qcomplex& operator/=(const qcomplex& o) {
    // Smith's algorithm.
    if (qabs(o.re) >= qabs(o.im)) {
      const quad r = o.im / o.re;
      const quad d = o.re + o.im * r;
      const quad nr = (re + im * r) / d;
      im = (im - re * r) / d;
      re = nr;
    } else {
      const quad r = o.re / o.im;
      const quad d = o.re * r + o.im;
      const quad nr = (re * r + im) / d;
      im = (im * r - re) / d;
      re = nr;
    }
    return *this;
  }
  friend qcomplex operator+(qcomplex a, const qcomplex& b) { return a += b; }
  friend qcomplex operator-(qcomplex a, const qcomplex& b) { return a -= b; }
  friend qcomplex operator*(qcomplex a, const qcomplex& b) { return a *= b; }
  friend qcomplex operator/(qcomplex a, const qcomplex& b) { return a /= b; }
  friend qcomplex operator-(const qcomplex& a) { return {-a.re, -a.im}; }
  friend qcomplex operator*(quad s, const qcomplex& a) { return {s * a.re, s * a.im}; }
};

inline quad abs(const qcomplex& z) { return qhypot(z.re, z.im); }

// ---------------------------------------------------------------------------
// conversions

inline quad to_quad(double x) { return x; }
inline quad to_quad(quad x) { return x; }
inline quad to_quad(const Rational& q) {
  // Three double limbs of a 192-bit mpf expansion cover binary128.
  mpf_class x(q, 192);
  quad acc = 0;
  for (int limb = 0; limb < 3; ++limb) {
    const double d = x.get_d();
    acc += d;
    x -= d;
  }
  return acc;
}

inline double to_double(double x) { return x; }
inline double to_double(quad x) { return static_cast<double>(x); }
inline double to_double(const Rational& q) { return static_cast<double>(to_quad(q)); }

/// Exact binary expansion of a double as a rational.
inline Rational to_rational(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
  return Rational(x);
}

template <class T>
T from_rational(const Rational& q);
template <>
inline double from_rational<double>(const Rational& q) { return to_double(q); }
template <>
inline quad from_rational<quad>(const Rational& q) { return to_quad(q); }
template <>
inline Rational from_rational<Rational>(const Rational& q) { return q; }

template <class T>
inline constexpr bool is_exact_v = false;
template <>
inline constexpr bool is_exact_v<Rational> = true;

template <class T>
bool is_zero(const T& x) {
  if constexpr (is_exact_v<T>) {
    return sgn(x) == 0;
  } else {
    return x == 0;
  }
}

/// "p/q" with q >= 1, for example "-1/1" or "3/4".
inline std::string to_pq_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Parses "p/q", an integer, or a decimal with optional exponent ("1.25e-3")
/// into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw DomainError("cannot parse number '" + std::string(text) + "'");
  };
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t first = 0;
  while (first < s.size() && std::isspace(static_cast<unsigned char>(s[first]))) ++first;
  s = s.substr(first);
  if (s.empty()) return fail();

  auto is_int = [](std::string_view v) {
    std::size_t i = (!v.empty() && (v[0] == '-' || v[0] == '+')) ? 1 : 0;
    if (i == v.size()) return false;
    for (; i < v.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
    return true;
  };
  auto to_mpz = [](std::string v) {
    if (!v.empty() && v[0] == '+') v.erase(0, 1);
    return mpz_class(v, 10);
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return fail();
    mpz_class d = to_mpz(den);
    if (d == 0) throw DomainError("zero denominator in '" + s + "'");
    Rational r(to_mpz(num), d);
    r.canonicalize();
    return r;
  }

  std::string mantissa = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    const std::string ex = s.substr(e + 1);
    if (!is_int(ex) || ex.size() > 6) return fail();
    exponent = std::stol(ex);
    mantissa = s.substr(0, e);
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa.erase(0, 1);
  }
  std::string digits;
  long frac = 0;
  bool seen_dot = false;
  for (char c : mantissa) {
    if (c == '.') {
      if (seen_dot) return fail();
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac;
    } else {
      return fail();
    }
  }
  if (digits.empty()) return fail();
  mpz_class n(digits, 10);
  if (negative) n = -n;
  const long shift = exponent - frac;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift >= 0 ? Rational(n * p10) : Rational(n, p10);
  r.canonicalize();
  return r;
}

/// Shortest decimal that round-trips, read back as an exact rational: 0.1
/// becomes 1/10 rather than the nearest binary double.
inline Rational decimal_rational(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return parse_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
}

}  // namespace rz
