#pragma once

// The acceptance suite: one function per criterion, each returning pass/fail
// and a one-line summary of what it measured.

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rz/polyseq.hpp"
#include "rz/rootfinder.hpp"
#include "rz/scan.hpp"
#include "rz/thetasolver.hpp"
#include "rz/witness.hpp"

namespace rz::acceptance {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  Outcome outcome;
  double seconds = 0;
};

namespace detail {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

/// Collects failures; keeps the first few messages.
struct Tally {
  int checks = 0, failures = 0;
  std::vector<std::string> first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (first.size() < 3) first.push_back(what);
  }
  Outcome done(const std::string& summary) const {
    std::ostringstream os;
    os << summary << "; " << checks - failures << "/" << checks << " checks";
    for (const auto& f : first) os << "; " << f;
    return {failures == 0, os.str()};
  }
};

template <class... Xs>
std::string str(const Xs&... xs) {
  std::ostringstream os;
  os.precision(10);
  (os << ... << xs);
  return os.str();
}

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline std::vector<Polynomial<Rational>> thm1_seq(double a, double b, int n) {
  return generate<Rational>(Thm1<Rational>{decimal_rational(a), decimal_rational(b)}, n);
}
inline std::vector<Polynomial<Rational>> thm3_seq(double a, double b, int n) {
  return generate<Rational>(Thm3<Rational>{decimal_rational(a), decimal_rational(b)}, n);
}
inline std::vector<cd> as_complex(const std::vector<double>& x) { return {x.begin(), x.end()}; }

inline double max_imag(const ComplexRootSet& rs) {
  double m = 0;
  for (auto z : rs.roots) m = std::max(m, std::abs(z.imag()));
  return m;
}

/// Same rule as is_hyperbolic's floating verdict.
inline bool all_real(const ComplexRootSet& rs) {
  for (auto z : rs.roots)
    if (is_nonreal(z, defaults::tol_real)) return false;
  return true;
}

}  // namespace detail

// 1
inline Outcome oracle_equivalence() {
  detail::Tally t;
  std::mt19937_64 rng(20240611);
  auto r = [&] { return detail::random_rational(rng); };
  for (int tag = 0; tag < 5; ++tag) {
    for (int trial = 0; trial < 10; ++trial) {
      Family<Rational> f;
      switch (tag) {
        case 0: f = Thm1<Rational>{r(), r()}; break;
        case 1: f = Thm3<Rational>{r(), r()}; break;
        case 2: f = GeneralR<Rational>{r(), r(), r(), r()}; break;
        case 3: f = ChebCombo<Rational>{r(), r()}; break;
        default: {
          Rational c = r();
          if (sgn(c) == 0) c = 1;
          f = Thm2<Rational>{r(), r(), c};
        }
      }
      const auto seq = generate(f, 12);
      const auto inv = series_inversion_oracle(family_denominator(f), 12);
      for (int n = 0; n <= 12; ++n)
        t.expect(seq[static_cast<std::size_t>(n)] == inv[static_cast<std::size_t>(n)],
                 detail::str(family_name(f), " trial ", trial, " n=", n));
    }
  }
  return t.done("5 families x 10 tuples, n <= 12, exact");
}

// 2
inline Outcome thm1_sufficiency() {
  detail::Tally t;
  double worst_imag = 0;
  for (auto [a, b] : {std::pair{0.0, 1.2}, {0.0, 4.0}, {0.5, 2.5}, {-0.7, 3.0}, {1.0, 3.5}}) {
    const auto seq = detail::thm1_seq(a, b, 60);
    const double s = 2 * std::sqrt(a * a + b);
    for (int n = 1; n <= 60; ++n) {
      const auto rs = all_roots(seq[static_cast<std::size_t>(n)]);
      const double mi = detail::max_imag(rs);
      worst_imag = std::max(worst_imag, mi);
      t.expect(detail::all_real(rs) && mi <= 1e-8, detail::str("(", a, ",", b, ") n=", n, " max_imag ", mi));
      t.expect(roots_in_interval(rs, 2 * a - s, 2 * a + s, 1e-6), detail::str("(", a, ",", b, ") n=", n, " outside interval"));
    }
  }
  return t.done(detail::str("5 points, n <= 60, worst max_imag ", worst_imag));
}

// 3
inline Outcome thm1_necessity() {
  detail::Tally t;
  std::string found;
  for (auto [a, b] : {std::pair{0.0, 0.5}, {0.0, -2.0}, {1.0, 2.5}, {-0.5, 0.0}}) {
    const auto tag = detail::str("(", a, ",", b, ")");
    try {
      const auto r = witness_thm1(a, b);
      t.expect(r.fully_certified() && r.checks.max_residual <= 1e-10 && r.checks.moduli_gap <= 1e-10,
               tag + " certificate");
      const auto v = verify_witness(r, 80);
      t.expect(v.empirical->n_found >= 1 && v.empirical->n_found <= 80, tag + " no non-real root");
      if (a == 0 && b == 0.5) t.expect(v.empirical->n_found == 2, detail::str(tag, " first n ", v.empirical->n_found));
      found += detail::str(" ", tag, "->n=", v.empirical->n_found);
    } catch (const Error& e) {
      t.expect(false, tag + " " + e.what());
    }
  }
  return t.done("first non-real:" + found);
}

// 4
inline Outcome theta_thm1_consistency() {
  detail::Tally t;
  double worst = 0;
  for (auto [a, b] : {std::pair{0.0, 1.2}, {0.0, 4.0}, {0.5, 2.5}, {-0.7, 3.0}, {1.0, 3.5}}) {
    const auto seq = detail::thm1_seq(a, b, 50);
    for (int n : {5, 20, 50}) {
      const auto rep = solve_theta_thm1(a, b, n);
      const double d = multiset_distance(detail::as_complex(rep.z_roots), all_roots(seq[static_cast<std::size_t>(n)]).roots);
      worst = std::max(worst, d);
      t.expect(rep.root_count == n, detail::str("(", a, ",", b, ") n=", n, " count ", rep.root_count));
      t.expect(d <= 1e-7, detail::str("(", a, ",", b, ") n=", n, " distance ", d));
    }
  }
  return t.done(detail::str("worst multiset distance ", worst));
}

// 5
inline Outcome thm3_sufficiency() {
  detail::Tally t;
  double worst_imag = 0, worst_dist = 0;
  for (auto [a, b] : {std::pair{0.0, 0.0}, {0.0, 0.9}, {0.25, 0.4}, {-0.25, -0.4}, {0.45, 0.05}}) {
    const auto tag = detail::str("(", a, ",", b, ")");
    const auto seq = detail::thm3_seq(a, b, 60);
    for (int n = 1; n <= 60; ++n) {
      const auto& p = seq[static_cast<std::size_t>(n)];
      const auto rs = all_roots(p);
      const double mi = detail::max_imag(rs);
      worst_imag = std::max(worst_imag, mi);
      t.expect(detail::all_real(rs) && mi <= 1e-8,
               detail::str(tag, " n=", n, " max_imag ", mi));
      bool inside = true;
      for (auto z : rs.roots) inside = inside && z.real() > -2 - 1e-6 && z.real() < 2 + 1e-6;
      t.expect(inside, detail::str(tag, " n=", n, " root outside (-2,2)"));
    }
    for (int n : {5, 20, 50}) {
      const auto rep = solve_theta_thm3(a, b, n);
      const double d = multiset_distance(detail::as_complex(rep.z_roots), all_roots(seq[static_cast<std::size_t>(n)]).roots);
      worst_dist = std::max(worst_dist, d);
      t.expect(rep.root_count >= n, detail::str(tag, " n=", n, " theta roots ", rep.root_count));
      t.expect(d <= 1e-7, detail::str(tag, " n=", n, " distance ", d));
    }
  }
  return t.done(detail::str("worst max_imag ", worst_imag, ", worst theta distance ", worst_dist));
}

// 6
inline Outcome thm3_necessity() {
  detail::Tally t;
  struct Point {
    double a, b;
    const char* tag;
  };
  std::string found;
  // (2,1.5) satisfies 2+|b| <= 2|a| and is built by the Case 3b search;
  // (1.5,1.5) exercises the Case 3a reuse of Case 1.
  for (auto p : {Point{0, 2, "Thm3-case1"}, Point{0.5, 0.8, "Thm3-case1"}, Point{1, 0, "Thm3-case1"},
                 Point{2, 0, "Thm3-case2"}, Point{2, 1.5, "Thm3-case3b"}, Point{1.5, 1.5, "Thm3-case3a"},
                 Point{3, 1, "Thm3-case3b"}}) {
    const auto tag = detail::str("(", p.a, ",", p.b, ")");
    try {
      const auto r = witness_thm3(p.a, p.b);
      t.expect(r.case_tag == p.tag, tag + " case " + r.case_tag);
      t.expect(r.certified() && r.checks.max_residual <= 1e-10 && r.checks.moduli_gap <= 1e-10, tag + " certificate");
      // The Case 2 zeros coincide when b = 0; distinctness is reported only.
      if (!(p.a == 2 && p.b == 0)) t.expect(r.checks.zeros_distinct, tag + " zeros not distinct");
      if (p.a == 2 && p.b == 0)
        t.expect(r.y_star && std::abs(*r.y_star - 1 / std::sqrt(2.0)) <= 1e-9, tag + " y* off");
      const auto v = verify_witness(r, 80);
      found += detail::str(" ", tag, "->n=", v.empirical->n_found);
    } catch (const Error& e) {
      t.expect(false, tag + " " + e.what());
    }
  }
  return t.done("first non-real:" + found);
}

// 7
inline Outcome thm2() {
  detail::Tally t;
  std::string found;
  for (auto [a, b, c] : {std::tuple{0.0, 0.5, -1.0}, std::tuple{1.0, 0.0, -4.0}, std::tuple{0.5, 2.0, -1.0}}) {
    const auto tag = detail::str("(", a, ",", b, ",", c, ")");
    try {
      const auto r = witness_thm2(a, b, c);
      t.expect(r.fully_certified() && r.checks.max_residual <= 1e-10 && r.checks.moduli_gap <= 1e-10,
               tag + " certificate");
      const auto v = verify_witness(r, 80);
      found += detail::str(" ", tag, "->n=", v.empirical->n_found);
    } catch (const Error& e) {
      t.expect(false, tag + " " + e.what());
    }
  }
  double worst = 0;
  for (auto [a, b] : {std::pair{0.5, 0.3}, {-1.0, 2.0}, {0.25, -1.5}}) {
    for (double c : {1.0, 4.0, 9.0}) {
      const int n = 6;
      const auto m = normalize_c(decimal_rational(a), decimal_rational(b), decimal_rational(c));
      const auto orig = all_roots(
          generate<Rational>(Thm2<Rational>{decimal_rational(a), decimal_rational(b), decimal_rational(c)}, n)[n]).roots;
      auto mapped = all_roots(generate<Rational>(m.params, n)[n]).roots;
      for (auto& w : mapped) w *= to_double(m.thm3_to_c.a);
      const double d = multiset_distance(orig, mapped);
      worst = std::max(worst, d);
      t.expect(d <= 1e-8, detail::str("normalize (", a, ",", b, ",", c, ") distance ", d));
    }
  }
  return t.done(detail::str("first non-real:", found, "; normalize_c worst distance ", worst));
}

// 8
inline Outcome thm3_limits() {
  detail::Tally t;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ua(-1, 1), ub(-1.5, 1.5);
  std::uniform_int_distribution<int> un(1, 20);
  double worst = 0;
  int tested = 0;
  while (tested < 10) {
    const double a = ua(rng), b = ub(rng);
    const int n = un(rng);
    if (std::abs(b - 2 * a) < 0.1 || std::abs(b + 2 * a) < 0.1) continue;
    const auto l = limits_thm3(a, b, n);
    const double dl = std::abs(G_n_thm3(a, b, n, 1e-6) - l.left);
    const double dr = std::abs(G_n_thm3(a, b, n, detail::pi - 1e-6) - l.right);
    worst = std::max({worst, dl, dr});
    t.expect(dl <= 1e-4 && dr <= 1e-4, detail::str("(", a, ",", b, ") n=", n, " left ", dl, " right ", dr));
    ++tested;
  }
  return t.done(detail::str("10 random (a,b,n), worst |G_n - limit| ", worst));
}

// 9
inline Outcome region_scan() {
  detail::Tally t;
  ScanOptions opt;
  opt.n_max = 30;
  std::ostringstream os;
  for (auto [f, ar, br] : {std::tuple{ThetaFamily::Thm1, Range{-1, 1}, Range{0, 4}},
                           std::tuple{ThetaFamily::Thm3, Range{-1, 1}, Range{-1.5, 1.5}}}) {
    const auto cells = scan_region(f, ar, br, 21, opt);
    const auto s = summarize(cells);
    os << to_string(f) << ": misclassified " << s.misclassified << " (inside " << s.inside_violations
       << ", outside still real " << s.outside_unresolved << "), interval failures " << s.interval_failures
       << ", suspect " << s.suspect << "; ";
    t.expect(s.misclassified == 0, detail::str(to_string(f), " misclassified ", s.misclassified));
    t.expect(s.interval_failures == 0, detail::str(to_string(f), " interval failures ", s.interval_failures));
    if (s.outside_unresolved == 0) continue;
    // Deeper look at the cells that were still real at n_max.
    ScanOptions deep = opt;
    deep.n_max = 80;
    os << "deeper n:";
    for (std::size_t k : s.misclassified_cells) {
      const auto& c = cells[k];
      if (c.boundary_dist > 0) continue;
      const auto d = classify_point(f, c.a, c.b, deep);
      os << " (" << c.a << "," << c.b << ")->" << (d.first_nonreal_n ? std::to_string(*d.first_nonreal_n) : ">80");
    }
    os << "; ";
  }
  return t.done(os.str() + "21x21, n_max 30, margin 0.05");
}

// 10
inline Outcome density() {
  detail::Tally t;
  std::ostringstream os;
  for (auto [f, a, b] : {std::tuple{ThetaFamily::Thm1, 0.0, 4.0}, std::tuple{ThetaFamily::Thm3, 0.0, 0.5}}) {
    const auto tr = density_trend(f, a, b, {10, 40, 160});
    os << to_string(f) << "(" << a << "," << b << ")";
    for (const auto& p : tr.points) os << " " << p.n << ":" << p.max_gap;
    os << "; ";
    t.expect(tr.decreasing, detail::str(to_string(f), " gaps not strictly decreasing"));
  }
  return t.done(os.str() + "max_gap at n = 10, 40, 160");
}

// 11
inline Outcome chebyshev() {
  detail::Tally t;
  const auto seq = generate<Rational>(GeneralR<Rational>{2, 0, 0, -1}, 30);
  double worst = 0;
  for (int n = 0; n <= 30; ++n) {
    const auto& p = seq[static_cast<std::size_t>(n)];
    for (int k = 0; k < 50; ++k) {
      const double th = detail::pi * (k + 0.5) / 50;
      // Monomial-basis Horner in double loses ~1e-6 at n = 30; evaluate
      // exactly at the double cos(theta).
      const double d = std::abs(to_double(p(to_rational(std::cos(th)))) - std::sin((n + 1) * th) / std::sin(th));
      worst = std::max(worst, d);
      t.expect(d <= 1e-10, detail::str("n=", n, " theta=", th, " error ", d));
    }
  }
  const auto u = chebyshev_u<Rational>(12);
  for (int n = 0; n <= 12; ++n)
    t.expect(gen_cheb_combo<Rational>(0, 0, n) == u[static_cast<std::size_t>(n)], detail::str("cheb combo n=", n));
  return t.done(detail::str("U_n(cos) identity worst error ", worst, "; combo(0,0) = U_n for n <= 12"));
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "oracle equivalence", oracle_equivalence},
      {2, "thm1 sufficiency", thm1_sufficiency},
      {3, "thm1 necessity", thm1_necessity},
      {4, "theta solver thm1", theta_thm1_consistency},
      {5, "thm3 sufficiency", thm3_sufficiency},
      {6, "thm3 necessity", thm3_necessity},
      {7, "thm2 witnesses and c normalization", thm2},
      {8, "thm3 limits", thm3_limits},
      {9, "region scan", region_scan},
      {10, "density", density},
      {11, "chebyshev sanity", chebyshev},
  };
  return all;
}

inline std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os.precision(3);
  os << (r.outcome.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << ": " << r.outcome.detail << " ("
     << std::fixed << r.seconds << " s)";
  return os.str();
}

/// Runs the selected criteria (all when `only` is empty); each line is
/// written to `out` as soon as it finishes.
inline std::vector<CriterionResult> run(const std::set<int>& only = {}, std::ostream* out = nullptr) {
  std::vector<CriterionResult> results;
  for (const auto& c : criteria()) {
    if (!only.empty() && !only.count(c.id)) continue;
    CriterionResult r{c.id, c.name, {}, 0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.outcome = c.run();
    } catch (const std::exception& e) {
      r.outcome = {false, std::string("threw: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out) *out << format_line(r) << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

inline std::set<int> failing(const std::vector<CriterionResult>& results) {
  std::set<int> f;
  for (const auto& r : results)
    if (!r.outcome.pass) f.insert(r.id);
  return f;
}

}  // namespace rz::acceptance
