#pragma once

// Empirical hyperbolicity over (a, b) grids for the thm1 and thm3 families,
// compared against the theoretical regions
//   thm1: b >= 1 + 2|a|        roots in [2a - 2 sqrt(a^2+b), 2a + 2 sqrt(a^2+b)]
//   thm3: |b| <= 1 - 2|a|      roots in (-2, 2)

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "rz/polyseq.hpp"
#include "rz/rootfinder.hpp"
#include "rz/thetasolver.hpp"

namespace rz {

namespace scan_defaults {
inline constexpr int n_max = 30;
inline constexpr double boundary_tol = 1e-9;
inline constexpr double margin = 0.05;
}  // namespace scan_defaults

enum class Verdict { RealUpToN, NonRealAtN };
enum class Theory { InsideSufficient, Outside, Boundary };

inline const char* to_string(Verdict v) { return v == Verdict::RealUpToN ? "RealUpToN" : "NonRealAtN"; }
inline const char* to_string(Theory t) {
  switch (t) {
    case Theory::InsideSufficient: return "InsideSufficient";
    case Theory::Outside: return "Outside";
    default: return "Boundary";
  }
}

struct ScanOptions {
  int n_max = scan_defaults::n_max;
  double tol_real = defaults::tol_real;
  double slack = defaults::interval_slack;
  /// Sturm-count verdicts on the exact coefficients.
  bool exact = false;
  /// 0: RZ_THREADS or hardware concurrency.
  unsigned threads = 0;
};

struct ScanCell {
  ThetaFamily family = ThetaFamily::Thm1;
  double a = 0, b = 0;
  int n_max = 0;
  Verdict verdict = Verdict::RealUpToN;
  std::optional<int> first_nonreal_n;
  double max_imag = 0;
  /// NaN when the theoretical interval is undefined (thm1 with a^2 + b <= 0).
  double interval_lo = NAN, interval_hi = NAN;
  bool interval_ok = false;
  Theory theory = Theory::Outside;
  /// Signed distance to the boundary along b: positive inside the sufficient region.
  double boundary_dist = 0;
  /// Set when the root solver was inconclusive at some n.
  bool suspect = false;
  std::string detail;

  std::string theory_label() const {
    if (theory != Theory::Boundary) return to_string(theory);
    return "Boundary(" + std::to_string(boundary_dist) + ")";
  }
};

/// Signed b-distance to the theoretical boundary (>= 0 inside).
inline double boundary_distance(ThetaFamily f, double a, double b) {
  return f == ThetaFamily::Thm1 ? b - (1 + 2 * std::abs(a)) : (1 - 2 * std::abs(a)) - std::abs(b);
}

inline Theory theory_label(ThetaFamily f, double a, double b, double tol = scan_defaults::boundary_tol) {
  const double d = boundary_distance(f, a, b);
  if (std::abs(d) <= tol) return Theory::Boundary;
  return d > 0 ? Theory::InsideSufficient : Theory::Outside;
}

inline std::optional<std::pair<double, double>> theory_interval(ThetaFamily f, double a, double b) {
  if (f == ThetaFamily::Thm3) return std::pair{-2.0, 2.0};
  if (a * a + b <= 0) return std::nullopt;
  return thm1_interval(a, b);
}

namespace detail {

inline Family<Rational> scan_family(ThetaFamily f, const Rational& a, const Rational& b) {
  if (f == ThetaFamily::Thm1) return Thm1<Rational>{a, b};
  return Thm3<Rational>{a, b};
}

inline ScanCell classify_exact_params(ThetaFamily f, const Rational& aq, const Rational& bq, const ScanOptions& opt) {
  if (opt.n_max < 1) throw DomainError("n_max must be at least 1");
  ScanCell cell;
  cell.family = f;
  cell.a = to_double(aq);
  cell.b = to_double(bq);
  cell.n_max = opt.n_max;
  cell.boundary_dist = boundary_distance(f, cell.a, cell.b);
  cell.theory = theory_label(f, cell.a, cell.b);
  const auto iv = theory_interval(f, cell.a, cell.b);
  if (iv) cell.interval_lo = iv->first, cell.interval_hi = iv->second;
  cell.interval_ok = iv.has_value();

  const auto seq = generate<Rational>(scan_family(f, aq, bq), opt.n_max);
  for (int n = 1; n <= opt.n_max; ++n) {
    const auto& p = seq[static_cast<std::size_t>(n)];
    if (p.degree() < 1) continue;
    ComplexRootSet rs;
    bool nonreal = false;
    try {
      rs = all_roots(p);
      for (auto z : rs.roots) {
        cell.max_imag = std::max(cell.max_imag, std::abs(z.imag()));
        nonreal = nonreal || is_nonreal(z, opt.tol_real);
      }
    } catch (const InconclusiveError& e) {
      cell.suspect = true;
      cell.detail = "n=" + std::to_string(n) + ": " + e.what();
      for (auto z : e.iterates()) {
        cell.max_imag = std::max(cell.max_imag, std::abs(z.imag()));
        nonreal = nonreal || is_nonreal(z, opt.tol_real);
      }
    }
    if (opt.exact) {
      const bool exact_nonreal = count_real_roots_exact(p) != p.degree();
      if (exact_nonreal != nonreal) cell.detail = "n=" + std::to_string(n) + ": floating verdict overridden by Sturm count";
      nonreal = exact_nonreal;
    }
    if (nonreal) {
      cell.verdict = Verdict::NonRealAtN;
      cell.first_nonreal_n = n;
      break;
    }
    if (iv && !roots_in_interval(rs, iv->first, iv->second, opt.slack)) cell.interval_ok = false;
  }
  return cell;
}

inline unsigned thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RZ_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace detail

/// Classifies P_1..P_{n_max}; stops at the first non-real index.
inline ScanCell classify_point(ThetaFamily f, double a, double b, const ScanOptions& opt = {}) {
  return detail::classify_exact_params(f, decimal_rational(a), decimal_rational(b), opt);
}

struct Range {
  double lo = 0, hi = 0;
};

/// Grid point i of `steps` on [lo, hi], computed in rationals.
inline Rational grid_coordinate(const Range& r, int i, int steps) {
  const Rational lo = decimal_rational(r.lo);
  if (steps == 1) return lo;
  Rational frac(i, steps - 1);
  frac.canonicalize();
  Rational x = lo + (decimal_rational(r.hi) - lo) * frac;
  x.canonicalize();
  return x;
}

/// Row-major over a (outer) and b (inner). A 1x1 grid evaluates (a.lo, b.lo).
inline std::vector<ScanCell> scan_region(ThetaFamily f, Range a_range, Range b_range, int a_steps, int b_steps,
                                         const ScanOptions& opt = {}) {
  if (a_steps < 1 || b_steps < 1) throw DomainError("grid needs at least one step per axis");
  if ((a_steps > 1 && !(a_range.lo < a_range.hi)) || (b_steps > 1 && !(b_range.lo < b_range.hi)))
    throw DomainError("scan ranges must satisfy lo < hi");
  const std::size_t total = static_cast<std::size_t>(a_steps) * static_cast<std::size_t>(b_steps);
  std::vector<ScanCell> cells(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < total;) {
      const int i = static_cast<int>(k / static_cast<std::size_t>(b_steps));
      const int j = static_cast<int>(k % static_cast<std::size_t>(b_steps));
      const Rational a = grid_coordinate(a_range, i, a_steps), b = grid_coordinate(b_range, j, b_steps);
      try {
        cells[k] = detail::classify_exact_params(f, a, b, opt);
      } catch (const Error& e) {
        cells[k].family = f;
        cells[k].a = to_double(a), cells[k].b = to_double(b);
        cells[k].n_max = opt.n_max;
        cells[k].suspect = true;
        cells[k].detail = e.what();
      }
    }
  };
  const unsigned nt = std::min<unsigned>(detail::thread_count(opt.threads), static_cast<unsigned>(total));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return cells;
}

inline std::vector<ScanCell> scan_region(ThetaFamily f, Range a_range, Range b_range, int steps,
                                         const ScanOptions& opt = {}) {
  return scan_region(f, a_range, b_range, steps, steps, opt);
}

struct ScanSummary {
  int inside_checked = 0;
  int outside_checked = 0;
  /// Within the margin of the boundary or labelled Boundary.
  int excluded = 0;
  int misclassified = 0;
  /// Inside cells that went non-real (contradicts sufficiency).
  int inside_violations = 0;
  /// Outside cells still real at n_max; may only resolve at larger n.
  int outside_unresolved = 0;
  int interval_failures = 0;
  int suspect = 0;
  std::vector<std::size_t> misclassified_cells;
};

/// Cells farther than `margin` from the boundary must agree with theory; inside
/// cells must also stay in the interval.
inline ScanSummary summarize(const std::vector<ScanCell>& cells, double margin = scan_defaults::margin) {
  ScanSummary s;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto& c = cells[k];
    if (c.suspect) ++s.suspect;
    if (c.theory == Theory::Boundary || std::abs(c.boundary_dist) < margin) {
      ++s.excluded;
      continue;
    }
    const bool inside = c.boundary_dist > 0;
    (inside ? s.inside_checked : s.outside_checked)++;
    const bool real = c.verdict == Verdict::RealUpToN;
    if (real != inside) {
      ++s.misclassified;
      ++(inside ? s.inside_violations : s.outside_unresolved);
      s.misclassified_cells.push_back(k);
    }
    if (inside && real && !c.interval_ok) ++s.interval_failures;
  }
  return s;
}

struct DensityPoint {
  int n = 0;
  double max_gap = 0;
};

struct DensityTrend {
  std::vector<DensityPoint> points;
  /// Strictly decreasing along n.
  bool decreasing = true;
  /// Each gap below 1.05 times the previous one.
  bool decreasing_with_slack = true;
};

inline DensityTrend density_trend(ThetaFamily f, double a, double b, const std::vector<int>& n_list) {
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (!(n_list[i] > n_list[i - 1])) throw DomainError("n_list must be increasing");
  if (theory_label(f, a, b) != Theory::InsideSufficient)
    throw DomainError("density trend needs parameters inside the sufficient region");
  DensityTrend t;
  for (int n : n_list) {
    const auto rep = f == ThetaFamily::Thm1 ? solve_theta_thm1(a, b, n) : solve_theta_thm3(a, b, n);
    t.points.push_back({n, density_stats(rep)});
  }
  for (std::size_t i = 1; i < t.points.size(); ++i) {
    t.decreasing = t.decreasing && t.points[i].max_gap < t.points[i - 1].max_gap;
    t.decreasing_with_slack = t.decreasing_with_slack && t.points[i].max_gap < 1.05 * t.points[i - 1].max_gap;
  }
  return t;
}

// --- output ----------------------------------------------------------------------

inline void write_csv(std::ostream& os, const std::vector<ScanCell>& cells) {
  os << "a,b,n_max,verdict,first_nonreal_n,max_imag,interval_lo,interval_hi,interval_ok,theory_label\n";
  os.precision(17);
  for (const auto& c : cells) {
    os << c.a << ',' << c.b << ',' << c.n_max << ',' << to_string(c.verdict) << ',';
    if (c.first_nonreal_n) os << *c.first_nonreal_n;
    os << ',' << c.max_imag << ',';
    if (!std::isnan(c.interval_lo)) os << c.interval_lo;
    os << ',';
    if (!std::isnan(c.interval_hi)) os << c.interval_hi;
    os << ',' << (c.interval_ok ? "true" : "false") << ',' << c.theory_label() << '\n';
  }
}

/// "a b class" triples; class 0 = RealUpToN, 1 = NonRealAtN, 2 = suspect.
inline void write_gnuplot(std::ostream& os, const std::vector<ScanCell>& cells) {
  os.precision(17);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto& c = cells[k];
    if (k > 0 && c.a != cells[k - 1].a) os << '\n';
    os << c.a << ' ' << c.b << ' ' << (c.suspect ? 2 : c.verdict == Verdict::RealUpToN ? 0 : 1) << '\n';
  }
}

}  // namespace rz
