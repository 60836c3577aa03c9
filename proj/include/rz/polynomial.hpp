#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "rz/scalar.hpp"

namespace rz {

template <class U, class T>
U scalar_cast(const T& x) {
  if constexpr (std::is_same_v<U, T>) {
    return x;
  } else if constexpr (std::is_same_v<U, double>) {
    return to_double(x);
  } else if constexpr (std::is_same_v<U, quad>) {
    return to_quad(x);
  } else if constexpr (std::is_same_v<T, double>) {
    return to_rational(x);
  } else {
    // quad -> Rational: 113 bits fit in three double limbs.
    Rational r;
    quad rest = x;
    for (int limb = 0; limb < 3; ++limb) {
      const double d = static_cast<double>(rest);
      r += to_rational(d);
      rest -= d;
    }
    return r;
  }
}

/// Dense univariate polynomial, constant term first. Trailing zeros are
/// always trimmed, so the zero polynomial has no coefficients and degree -1.
template <class T>
class Polynomial {
 public:
  using value_type = T;

  Polynomial() = default;
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(T value) { return Polynomial(std::vector<T>{std::move(value)}); }
  static Polynomial monomial(T value, int power) {
    std::vector<T> c(static_cast<std::size_t>(power) + 1, T(0));
    c.back() = std::move(value);
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : T(0);
  }
  const T& leading() const { return c_.back(); }

  /// Horner evaluation in whatever type the argument carries.
  template <class X>
  X operator()(const X& x) const {
    X acc = X(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (rz::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t k = 0; k < a.c_.size(); ++k)
      if (!(a.c_[k] == b.c_[k])) return false;
    return true;
  }

 private:
  void trim() {
    while (!c_.empty() && rz::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const Polynomial<T>& p) {
  os << '[';
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    if (k) os << ", ";
    if constexpr (std::is_same_v<T, quad>) os << to_string(p.coeffs()[k]);
    else os << p.coeffs()[k];
  }
  return os << ']';
}

template <class U, class T>
Polynomial<U> polynomial_cast(const Polynomial<T>& p) {
  std::vector<U> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.push_back(scalar_cast<U>(x));
  return Polynomial<U>(std::move(c));
}

template <class T>
Polynomial<T> pow(const Polynomial<T>& p, int k) {
  Polynomial<T> r = Polynomial<T>::constant(T(1));
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

/// Coefficient-wise comparison relative to the largest coefficient magnitude
/// of either operand. Exact types compare exactly.
template <class T>
bool approx_equal(const Polynomial<T>& p, const Polynomial<T>& q, double rel = 1e-12) {
  if constexpr (is_exact_v<T>) {
    return p == q;
  } else {
    const int n = std::max(p.degree(), q.degree());
    double scale = 0;
    for (int k = 0; k <= n; ++k)
      scale = std::max({scale, std::abs(to_double(p.coeff(k))), std::abs(to_double(q.coeff(k)))});
    for (int k = 0; k <= n; ++k)
      if (std::abs(to_double(p.coeff(k) - q.coeff(k))) > rel * scale) return false;
    return true;
  }
}

/// Euclidean division p = quotient * d + remainder, deg remainder < deg d.
template <class T>
std::pair<Polynomial<T>, Polynomial<T>> divmod(const Polynomial<T>& p, const Polynomial<T>& d) {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<T> rem = p.coeffs();
  const int dd = d.degree();
  if (p.degree() < dd) return {Polynomial<T>{}, p};
  std::vector<T> quo(static_cast<std::size_t>(p.degree() - dd) + 1, T(0));
  for (int k = p.degree(); k >= dd; --k) {
    const T f = rem[static_cast<std::size_t>(k)] / d.leading();
    quo[static_cast<std::size_t>(k - dd)] = f;
    if (is_zero(f)) continue;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k - dd + j)] -= f * d.coeff(j);
    rem[static_cast<std::size_t>(k)] = T(0);
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Polynomial<T>(std::move(quo)), Polynomial<T>(std::move(rem))};
}

/// Affine form a z + b.
template <class T>
struct LinearForm {
  T a{0};
  T b{0};

  template <class X>
  X operator()(const X& z) const {
    return X(a) * z + X(b);
  }
  Polynomial<T> polynomial() const { return Polynomial<T>({b, a}); }
};

/// p(alpha z + beta).
template <class T>
Polynomial<T> compose(const Polynomial<T>& p, const LinearForm<T>& l) {
  const Polynomial<T> inner = l.polynomial();
  Polynomial<T> acc;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
    acc = acc * inner + Polynomial<T>::constant(*it);
  return acc;
}

/// Power series (or polynomial) in t whose coefficients are polynomials in z.
template <class T>
using TSeries = std::vector<Polynomial<T>>;

/// Product of two t-series, truncated to the first `terms` coefficients
/// (all of them when terms < 0).
template <class T>
TSeries<T> multiply(const TSeries<T>& x, const TSeries<T>& y, int terms = -1) {
  if (x.empty() || y.empty()) return {};
  std::size_t n = x.size() + y.size() - 1;
  if (terms >= 0) n = std::min(n, static_cast<std::size_t>(terms));
  TSeries<T> r(n);
  for (std::size_t i = 0; i < x.size() && i < n; ++i)
    for (std::size_t j = 0; j < y.size() && i + j < n; ++j) r[i + j] += x[i] * y[j];
  return r;
}

}  // namespace rz
