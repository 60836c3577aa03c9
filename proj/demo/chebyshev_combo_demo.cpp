// Q_n(z) = sum_k (az+b)^k U_{n-k}(z) through the Thm3 family: z -> -z/2
// turns Q_n into P_n for Thm3(a/2, -b), so Q_n is real-rooted for all n
// exactly when |b| <= 1 - |a|. For each (a, b) below we
//   - check the mapped root sets agree at n = 12,
//   - find the first n <= 40 where Q_n has a non-real zero,
//   - for points outside, print the Thm3 witness carried back to Q.
//
// Usage: chebyshev_combo_demo [a b]...

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <vector>

#include "rz/rz.hpp"

namespace {

using rz::Rational;

void report(double a, double b) {
  const Rational aq = rz::decimal_rational(a), bq = rz::decimal_rational(b);
  const auto red = rz::map_cheb_combo_to_thm3(aq, bq);
  const double k = rz::to_double(red.thm3_to_combo.a);

  std::cout << "(a, b) = (" << a << ", " << b << ")  ->  Thm3(" << rz::to_double(red.params.a) << ", "
            << rz::to_double(red.params.b) << ")";
  const bool inside = std::abs(b) <= 1 - std::abs(a);
  std::cout << (inside ? "  inside |b| <= 1-|a|\n" : "  outside\n");

  // z of the Thm3 P_12 maps to -z/2 of Q_12.
  const int n = 12;
  const auto q = rz::gen_cheb_combo(aq, bq, n);
  const auto p = rz::generate<Rational>(red.params, n)[n];
  auto mapped = rz::all_roots(p).roots;
  for (auto& z : mapped) z *= k;
  std::cout << "  n=12 root sets differ by " << rz::multiset_distance(rz::all_roots(q).roots, mapped) << "\n";

  int first = 0;
  for (int m = 1; m <= 40 && !first; ++m)
    if (rz::is_hyperbolic(rz::gen_cheb_combo(aq, bq, m)).status != rz::Hyperbolicity::AllReal) first = m;
  if (first)
    std::cout << "  first non-real zero at n = " << first << "\n";
  else
    std::cout << "  real-rooted for n <= 40\n";

  if (inside) return;
  try {
    const auto w = rz::witness_thm3(rz::to_double(red.params.a), rz::to_double(red.params.b));
    const auto zq = k * w.z_star;
    std::cout << "  witness " << w.case_tag << ": z* = " << w.z_star << ", on the Q side " << zq
              << (w.certified() ? "  (certified)" : "  (not certified)") << "\n";
  } catch (const rz::Error& e) {
    std::cout << "  no witness: " << e.what() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::pair<double, double>> points{{0, 0}, {0.5, 0.3}, {-0.4, -0.5}, {0.5, 0.8}, {1.2, 0}, {0, 1.5}};
  if (argc > 1) {
    if (argc % 2 != 1) {
      std::cerr << "usage: " << argv[0] << " [a b]...\n";
      return 1;
    }
    points.clear();
    for (int i = 1; i + 1 < argc; i += 2) points.emplace_back(std::atof(argv[i]), std::atof(argv[i + 1]));
  }
  std::cout << std::setprecision(6);
  for (auto [a, b] : points) report(a, b);
}
