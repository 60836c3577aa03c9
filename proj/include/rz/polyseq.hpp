#pragma once

// Polynomial families with rational generating functions and their
// recurrences:
//
//   Thm1(a,b)        1 / ((t+1)((az+b)t^2 + zt + 1))
//   Thm3(a,b)        1 / (((az+b)t+1)(t^2 + zt + 1))
//   Thm2(a,b,c)      1 / (((az+b)t+1)(ct^2 + zt + 1))
//   GeneralR(a1..b2) 1 / (1 - (a1 z+b1)t - (a2 z+b2)t^2)
//   ChebCombo(a,b)   1 / ((1-(az+b)t)(1 - 2zt + t^2)),  Q_n = sum_k (az+b)^k U_{n-k}
//
// Every sequence starts at P_0 = 1 with P_{-k} = 0.

#include <array>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "rz/polynomial.hpp"

namespace rz {

template <class T>
struct Thm1 {
  T a{0}, b{0};
};
template <class T>
struct Thm3 {
  T a{0}, b{0};
};
template <class T>
struct GeneralR {
  T a1{0}, b1{0}, a2{0}, b2{0};
};
template <class T>
struct ChebCombo {
  T a{0}, b{0};
};
template <class T>
struct Thm2 {
  T a{0}, b{0}, c{1};
};

template <class T>
using Family = std::variant<Thm1<T>, Thm3<T>, GeneralR<T>, ChebCombo<T>, Thm2<T>>;

template <class T>
std::string family_name(const Family<T>& f) {
  static constexpr const char* names[] = {"thm1", "thm3", "generalr", "chebcombo", "thm2"};
  return names[f.index()];
}

template <class U, class T>
Family<U> family_cast(const Family<T>& f) {
  auto c = [](const T& x) { return scalar_cast<U>(x); };
  return std::visit(
      [&](const auto& p) -> Family<U> {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Thm1<T>>) return Thm1<U>{c(p.a), c(p.b)};
        else if constexpr (std::is_same_v<P, Thm3<T>>) return Thm3<U>{c(p.a), c(p.b)};
        else if constexpr (std::is_same_v<P, GeneralR<T>>)
          return GeneralR<U>{c(p.a1), c(p.b1), c(p.a2), c(p.b2)};
        else if constexpr (std::is_same_v<P, ChebCombo<T>>) return ChebCombo<U>{c(p.a), c(p.b)};
        else return Thm2<U>{c(p.a), c(p.b), c(p.c)};
      },
      f);
}

template <class T>
void validate(const Family<T>& f) {
  if (const auto* p = std::get_if<Thm2<T>>(&f); p && is_zero(p->c))
    throw DomainError("thm2 family requires c != 0");
}

/// P_n = m1 P_{n-1} + m2 P_{n-2} + m3 P_{n-3}.
template <class T>
struct RecurrenceSpec {
  std::array<Polynomial<T>, 3> multipliers;
};

/// Negated t-coefficients of the family's expanded denominator.
template <class T>
RecurrenceSpec<T> recurrence_for_family(const Family<T>& f) {
  validate(f);
  using Poly = Polynomial<T>;
  return std::visit(
      [](const auto& p) -> RecurrenceSpec<T> {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Thm1<T>>) {
          return {{Poly({T(-1), T(-1)}), Poly({-p.b, -(p.a + T(1))}), Poly({-p.b, -p.a})}};
        } else if constexpr (std::is_same_v<P, Thm3<T>>) {
          return {{Poly({-p.b, -(p.a + T(1))}), Poly({T(-1), -p.b, -p.a}), Poly({-p.b, -p.a})}};
        } else if constexpr (std::is_same_v<P, GeneralR<T>>) {
          return {{Poly({p.b1, p.a1}), Poly({p.b2, p.a2}), Poly{}}};
        } else if constexpr (std::is_same_v<P, ChebCombo<T>>) {
          // (1-(az+b)t)(1-2zt+t^2) = 1 - ((a+2)z+b)t + (1+2bz+2az^2)t^2 - (az+b)t^3
          return {{Poly({p.b, p.a + T(2)}), Poly({T(-1), T(-2) * p.b, T(-2) * p.a}),
                   Poly({p.b, p.a})}};
        } else {
          return {{Poly({-p.b, -(p.a + T(1))}), Poly({-p.c, -p.b, -p.a}),
                   Poly({-p.c * p.b, -p.c * p.a})}};
        }
      },
      f);
}

/// P_0 .. P_n of the recurrence.
template <class T>
std::vector<Polynomial<T>> gen_sequence(const RecurrenceSpec<T>& spec, int n) {
  if (n < 0) throw DomainError("sequence length must be non-negative");
  std::vector<Polynomial<T>> seq;
  seq.reserve(static_cast<std::size_t>(n) + 1);
  seq.push_back(Polynomial<T>::constant(T(1)));
  for (int k = 1; k <= n; ++k) {
    Polynomial<T> next;
    for (int j = 0; j < 3; ++j) {
      if (k - 1 - j < 0) break;
      const auto& m = spec.multipliers[static_cast<std::size_t>(j)];
      if (!m.is_zero()) next += m * seq[static_cast<std::size_t>(k - 1 - j)];
    }
    seq.push_back(std::move(next));
  }
  return seq;
}

template <class T>
std::vector<Polynomial<T>> generate(const Family<T>& f, int n) {
  return gen_sequence(recurrence_for_family(f), n);
}

/// The family's generating-function denominator, assembled from its factors.
template <class T>
TSeries<T> family_denominator(const Family<T>& f) {
  validate(f);
  using Poly = Polynomial<T>;
  const Poly one = Poly::constant(T(1));
  return std::visit(
      [&](const auto& p) -> TSeries<T> {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Thm1<T>>) {
          const LinearForm<T> l{p.a, p.b};
          return multiply(TSeries<T>{one, one}, TSeries<T>{one, Poly({T(0), T(1)}), l.polynomial()});
        } else if constexpr (std::is_same_v<P, Thm3<T>>) {
          const LinearForm<T> l{p.a, p.b};
          return multiply(TSeries<T>{one, l.polynomial()}, TSeries<T>{one, Poly({T(0), T(1)}), one});
        } else if constexpr (std::is_same_v<P, GeneralR<T>>) {
          return TSeries<T>{one, -LinearForm<T>{p.a1, p.b1}.polynomial(),
                            -LinearForm<T>{p.a2, p.b2}.polynomial()};
        } else if constexpr (std::is_same_v<P, ChebCombo<T>>) {
          const LinearForm<T> l{p.a, p.b};
          return multiply(TSeries<T>{one, -l.polynomial()}, TSeries<T>{one, Poly({T(0), T(-2)}), one});
        } else {
          const LinearForm<T> l{p.a, p.b};
          return multiply(TSeries<T>{one, l.polynomial()},
                          TSeries<T>{one, Poly({T(0), T(1)}), Poly::constant(p.c)});
        }
      },
      f);
}

/// First n+1 coefficients of 1/denominator as a formal power series in t,
/// computed by Newton iteration g <- g(2 - D g) with doubling precision.
template <class T>
TSeries<T> series_inversion_oracle(const TSeries<T>& denominator, int n) {
  if (n < 0) throw DomainError("series length must be non-negative");
  if (denominator.empty() || denominator[0].is_zero())
    throw NonInvertibleError("denominator has zero constant term");
  if (denominator[0].degree() != 0)
    throw NonInvertibleError("constant term of the denominator must be a nonzero constant");
  const T inv0 = T(1) / denominator[0].leading();
  TSeries<T> g{Polynomial<T>::constant(inv0)};
  int have = 1;
  const int want = n + 1;
  while (have < want) {
    const int next = std::min(2 * have, want);
    TSeries<T> e = multiply(denominator, g, next);
    e.resize(static_cast<std::size_t>(next));
    for (auto& c : e) c = -c;
    e[0] += Polynomial<T>::constant(T(2));
    g = multiply(g, e, next);
    g.resize(static_cast<std::size_t>(next));
    have = next;
  }
  g.resize(static_cast<std::size_t>(want));
  return g;
}

/// U_0 .. U_n, U_{k+1} = 2z U_k - U_{k-1}.
template <class T>
std::vector<Polynomial<T>> chebyshev_u(int n) {
  std::vector<Polynomial<T>> u{Polynomial<T>::constant(T(1))};
  if (n >= 1) u.push_back(Polynomial<T>({T(0), T(2)}));
  const Polynomial<T> two_z({T(0), T(2)});
  for (int k = 2; k <= n; ++k) u.push_back(two_z * u[static_cast<std::size_t>(k - 1)] - u[static_cast<std::size_t>(k - 2)]);
  u.resize(static_cast<std::size_t>(n) + 1);
  return u;
}

/// T_0 .. T_n, T_{k+1} = 2z T_k - T_{k-1}.
template <class T>
std::vector<Polynomial<T>> chebyshev_t(int n) {
  std::vector<Polynomial<T>> t{Polynomial<T>::constant(T(1))};
  if (n >= 1) t.push_back(Polynomial<T>({T(0), T(1)}));
  const Polynomial<T> two_z({T(0), T(2)});
  for (int k = 2; k <= n; ++k) t.push_back(two_z * t[static_cast<std::size_t>(k - 1)] - t[static_cast<std::size_t>(k - 2)]);
  t.resize(static_cast<std::size_t>(n) + 1);
  return t;
}

/// Q_n = sum_{k=0}^{n} (az+b)^k U_{n-k}, summed directly. (az+b)^0 = 1 even
/// when az+b vanishes identically.
template <class T>
Polynomial<T> gen_cheb_combo(const T& a, const T& b, int n) {
  if (n < 0) throw DomainError("index must be non-negative");
  const auto u = chebyshev_u<T>(n);
  const Polynomial<T> l = LinearForm<T>{a, b}.polynomial();
  Polynomial<T> power = Polynomial<T>::constant(T(1));
  Polynomial<T> q;
  for (int k = 0; k <= n; ++k) {
    q += power * u[static_cast<std::size_t>(n - k)];
    power = power * l;
  }
  return q;
}

/// S_n = R_0 + ... + R_n.
template <class T>
std::vector<Polynomial<T>> partial_sums(const std::vector<Polynomial<T>>& seq) {
  std::vector<Polynomial<T>> s;
  Polynomial<T> acc;
  for (const auto& p : seq) {
    acc += p;
    s.push_back(acc);
  }
  return s;
}

template <class T>
struct SumRReduction {
  Thm1<T> params;
  /// Sends a zero w of sum_k R_{n-k} to the zero a1 w + b1 of the Thm1 P_n.
  LinearForm<T> sum_to_thm1;
};

/// t -> -t followed by z = a1 w + b1 turns the partial-sum generating function
/// 1/((1-t)(1-(a1 w+b1)t-(a2 w+b2)t^2)) into the Thm1 form with
/// a = -a2/a1, b = a2 b1/a1 - b2; the n-th coefficient picks up (-1)^n.
template <class T>
SumRReduction<T> reduce_sumR_to_thm1(const GeneralR<T>& r) {
  if (is_zero(r.a1)) throw UnsupportedReductionError("reduction needs a1 != 0");
  if (is_zero(r.a2)) throw UnsupportedReductionError("reduction needs a2 != 0");
  return {Thm1<T>{-r.a2 / r.a1, r.a2 * r.b1 / r.a1 - r.b2}, LinearForm<T>{r.a1, r.b1}};
}

template <class T>
struct ChebComboReduction {
  Thm3<T> params;
  /// Sends a zero z of the Thm3 P_n to the zero -z/2 of Q_n.
  LinearForm<T> thm3_to_combo;
};

/// z -> -z/2 sends 1-(az+b)t to 1+(az/2-b)t and 1-2zt+t^2 to 1+zt+t^2.
template <class T>
ChebComboReduction<T> map_cheb_combo_to_thm3(const T& a, const T& b) {
  return {Thm3<T>{a / T(2), -b}, LinearForm<T>{T(-1) / T(2), T(0)}};
}

template <class T>
struct CNormalization {
  Thm3<T> params;
  /// Sends a zero w of the normalized Thm3 P_n to the zero sqrt(c) w of the
  /// (a,b,c) family's P_n.
  LinearForm<T> thm3_to_c;
};

namespace detail {
template <class T>
T positive_sqrt(const T& c) {
  if constexpr (is_exact_v<T>) {
    Rational r = c;
    r.canonicalize();
    mpz_class n = sqrt(r.get_num()), d = sqrt(r.get_den());
    if (n * n != r.get_num() || d * d != r.get_den())
      throw DomainError("c is not the square of a rational; use floating mode");
    return Rational(n, d);
  } else if constexpr (std::is_same_v<T, quad>) {
    return qsqrt(c);
  } else {
    return std::sqrt(c);
  }
}
}  // namespace detail

/// t -> t/sqrt(c), z -> sqrt(c) w: the (a,b,c) family, c > 0, has
/// P_n(z) = c^{n/2} P~_n(z/sqrt(c)) with P~ the Thm3(a, b/sqrt(c)) family.
template <class T>
CNormalization<T> normalize_c(const T& a, const T& b, const T& c) {
  if (!(c > T(0))) throw DomainError("normalize_c needs c > 0");
  const T s = detail::positive_sqrt(c);
  return {Thm3<T>{a, b / s}, LinearForm<T>{s, T(0)}};
}

}  // namespace rz
