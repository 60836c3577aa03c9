#pragma once

// Thin RAII wrapper over MPFR with an explicit precision per value (no global
// default, so threads can use different precisions) and a complex type on top.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include "rz/scalar.hpp"

namespace rz {

class MpReal {
 public:
  explicit MpReal(mpfr_prec_t bits = 128) { mpfr_init2(v_, bits), mpfr_set_zero(v_, 1); }
  MpReal(double x, mpfr_prec_t bits) { mpfr_init2(v_, bits), mpfr_set_d(v_, x, MPFR_RNDN); }
  MpReal(const Rational& q, mpfr_prec_t bits) { mpfr_init2(v_, bits), mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
  /// Exact: three doubles carry all 113 bits.
  MpReal(quad x, mpfr_prec_t bits) {
    mpfr_init2(v_, std::max<mpfr_prec_t>(bits, 2));
    const double hi = static_cast<double>(x);
    const double mid = static_cast<double>(x - hi);
    const double lo = static_cast<double>(x - hi - mid);
    mpfr_set_d(v_, hi, MPFR_RNDN);
    mpfr_add_d(v_, v_, mid, MPFR_RNDN);
    mpfr_add_d(v_, v_, lo, MPFR_RNDN);
  }
  MpReal(const MpReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)), mpfr_set(v_, o.v_, MPFR_RNDN); }
  MpReal(MpReal&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  MpReal& operator=(const MpReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpReal& operator=(MpReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// log2 |x| (-inf at zero).
  double log2_abs() const {
    if (mpfr_zero_p(v_)) return -INFINITY;
    long e = 0;
    const double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
    return std::log2(std::abs(m)) + static_cast<double>(e);
  }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  friend MpReal operator+(const MpReal& a, const MpReal& b) { return bin(a, b, mpfr_add); }
  friend MpReal operator-(const MpReal& a, const MpReal& b) { return bin(a, b, mpfr_sub); }
  friend MpReal operator*(const MpReal& a, const MpReal& b) { return bin(a, b, mpfr_mul); }
  friend MpReal operator/(const MpReal& a, const MpReal& b) { return bin(a, b, mpfr_div); }
  friend MpReal operator-(const MpReal& a) {
    MpReal r(a.bits());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend bool operator<(const MpReal& a, const MpReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }

  friend MpReal abs(const MpReal& a) {
    MpReal r(a.bits());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend MpReal hypot(const MpReal& a, const MpReal& b) { return bin(a, b, mpfr_hypot); }

 private:
  template <class Op>
  static MpReal bin(const MpReal& a, const MpReal& b, Op op) {
    MpReal r(std::max(a.bits(), b.bits()));
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  mpfr_t v_;
};

struct MpComplex {
  MpReal re, im;

  explicit MpComplex(mpfr_prec_t bits = 128) : re(bits), im(bits) {}
  MpComplex(MpReal r, MpReal i) : re(std::move(r)), im(std::move(i)) {}
  MpComplex(std::complex<double> z, mpfr_prec_t bits) : re(z.real(), bits), im(z.imag(), bits) {}
  MpComplex(const qcomplex& z, mpfr_prec_t bits) : re(z.re, bits), im(z.im, bits) {}

  std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }
  /// Nearest quad, built from two doubles (enough for reporting).
  qcomplex to_quad() const {
    auto q = [](const MpReal& x) {
      const double hi = x.to_double();
      const MpReal rest = x - MpReal(hi, x.bits());
      return static_cast<quad>(hi) + static_cast<quad>(rest.to_double());
    };
    return {q(re), q(im)};
  }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  friend MpComplex operator+(const MpComplex& a, const MpComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend MpComplex operator-(const MpComplex& a, const MpComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend MpComplex operator/(const MpComplex& a, const MpComplex& b) {
    const MpReal d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend MpReal abs(const MpComplex& z) { return hypot(z.re, z.im); }
};

template <class T>
MpReal to_mp(const T& x, mpfr_prec_t bits) {
  if constexpr (std::is_same_v<T, Rational>)
    return MpReal(x, bits);
  else
    return MpReal(static_cast<quad>(x), bits);
}

}  // namespace rz
