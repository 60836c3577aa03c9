#include "rz/thetasolver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "rz/polyseq.hpp"
#include "rz/rootfinder.hpp"

namespace rz {
namespace {

constexpr double pi = std::numbers::pi;

Polynomial<Rational> thm1_poly(double a, double b, int n) {
  return generate<Rational>(Thm1<Rational>{to_rational(a), to_rational(b)}, n)[static_cast<std::size_t>(n)];
}
Polynomial<Rational> thm3_poly(double a, double b, int n) {
  return generate<Rational>(Thm3<Rational>{to_rational(a), to_rational(b)}, n)[static_cast<std::size_t>(n)];
}

std::vector<std::complex<double>> as_complex(const std::vector<double>& x) { return {x.begin(), x.end()}; }

/// |p(z)| / sum |c_k| max(1, |z|)^k in quad precision.
double relative_value(const Polynomial<Rational>& p, double z) {
  quad acc = 0, scale = 0;
  const quad zq = z, r = std::max(quad(1), qabs(zq));
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    const quad c = to_quad(*it);
    acc = acc * zq + c;
    scale = scale * r + qabs(c);
  }
  return static_cast<double>(qabs(acc) / scale);
}

TEST(ZThetaThm1, Examples) {
  EXPECT_NEAR(z_theta_thm1(0, 1, pi / 2), 0, 1e-15);
  EXPECT_NEAR(z_theta_thm1(0, 2, 1e-9), -2 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(z_theta_thm1(0, 2, std::acos(1 / (2 * std::sqrt(2.0)))), -1, 1e-15);
  EXPECT_THROW(z_theta_thm1(0, -1, 1.0), DomainError);
}

TEST(ZThetaThm1, SatisfiesQuadraticAndSignRelation) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ua(-2, 2), extra(0, 3), th(1e-3, pi - 1e-3);
  for (int s = 0; s < 200; ++s) {
    const double a = ua(rng), b = 1 + 2 * std::abs(a) + extra(rng), t = th(rng);
    const double z = z_theta_thm1(a, b, t), c = std::cos(t);
    const double scale = z * z + std::abs(4 * a * z * c * c) + std::abs(4 * b * c * c);
    EXPECT_LE(std::abs(z * z - 4 * a * z * c * c - 4 * b * c * c), 1e-12 * scale);
    if (std::abs(t - pi / 2) > 1e-6) {
      EXPECT_LT(z * c, 0);
    }
  }
}

TEST(ZThetaThm1, StrictlyIncreasing) {
  for (auto [a, b] : {std::pair{0.0, 1.2}, {0.5, 2.5}, {-0.7, 3.0}, {1.0, 3.5}, {-2.0, 6.0}}) {
    double prev = -INFINITY;
    for (int i = 1; i < 10000; ++i) {
      const double z = z_theta_thm1(a, b, pi * i / 10000);
      ASSERT_GT(z, prev) << a << " " << b << " i=" << i;
      prev = z;
    }
  }
}

TEST(TauThm1, Examples) {
  EXPECT_DOUBLE_EQ(tau_thm1(0, 4, 0.7), 0.5);
  EXPECT_DOUBLE_EQ(tau_thm1(0, 1, pi / 3), 1);
  EXPECT_NEAR(tau_thm1(1, 3, pi / 2), 1 / std::sqrt(3.0), 1e-15);
  EXPECT_THROW(tau_thm1(1, 0, pi / 2), DomainError);
}

TEST(TauThm1, BelowOneInsideRegion) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ua(-2, 2), extra(1e-3, 3), th(1e-3, pi - 1e-3);
  for (int s = 0; s < 200; ++s) {
    const double a = ua(rng), b = 1 + 2 * std::abs(a) + extra(rng);
    const double t = tau_thm1(a, b, th(rng));
    EXPECT_GT(t, 0);
    EXPECT_LT(t, 1);
  }
}

TEST(TauThm1, VietaRootsOfDenominatorQuadratic) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ua(-2, 2), extra(0.1, 3), th(1e-3, pi - 1e-3);
  for (int s = 0; s < 100; ++s) {
    const double a = ua(rng), b = 1 + 2 * std::abs(a) + extra(rng), t = th(rng);
    const double z = z_theta_thm1(a, b, t), tau = tau_thm1(a, b, t);
    for (double sign : {1.0, -1.0}) {
      const std::complex<double> root = tau * std::polar(1.0, sign * t);
      const auto v = (a * z + b) * root * root + z * root + 1.0;
      EXPECT_LE(std::abs(v), 1e-10);
    }
  }
}

TEST(FnThm1, Examples) {
  EXPECT_NEAR(F_n_thm1(0, 2, 1, std::acos(1 / (2 * std::sqrt(2.0)))), 0, 1e-14);
  for (int k = 1; k <= 3; ++k) {
    const double f = F_n_thm1(0, 4, 3, k * pi / 4);
    EXPECT_EQ(f > 0, (k + 1) % 2 == 0) << "k=" << k;
  }
  for (int n = 1; n <= 12; ++n) EXPECT_LT(F_n_thm1(0, 4, n, 1e-7), 0) << "n=" << n;
  EXPECT_THROW(F_n_thm1(0, 4, 3, 0.0), DomainError);
}

TEST(FnThm1, ProportionalToPnAlongTheCurve) {
  // F_n(theta) = -|1 + tau e^{i theta}|^2 tau^{n-1} P_n(z(theta)).
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ua(-1.5, 1.5), extra(0.05, 2), th(0.01, pi - 0.01);
  std::uniform_int_distribution<int> un(1, 25);
  for (int s = 0; s < 100; ++s) {
    const double a = ua(rng), b = 1 + 2 * std::abs(a) + extra(rng), t = th(rng);
    const int n = un(rng);
    const double z = z_theta_thm1(a, b, t), tau = tau_thm1(a, b, t);
    const auto p = polynomial_cast<quad>(thm1_poly(a, b, n));
    const double pz = static_cast<double>(p(static_cast<quad>(z)));
    const double factor = -std::norm(1.0 + tau * std::polar(1.0, t)) * std::pow(tau, n - 1);
    const double f = F_n_thm1(a, b, n, t);
    EXPECT_NEAR(f, factor * pz, 1e-9 * (1 + std::abs(f))) << a << " " << b << " n=" << n;
  }
}

TEST(SolveThetaThm1, Examples) {
  const auto r1 = solve_theta_thm1(0, 2, 1);
  ASSERT_EQ(r1.root_count, 1);
  EXPECT_NEAR(r1.z_roots[0], -1, 1e-12);
  const auto r2 = solve_theta_thm1(0, 2, 2);
  ASSERT_EQ(r2.root_count, 2);
  EXPECT_NEAR(r2.z_roots[0], (-1 - std::sqrt(5.0)) / 2, 1e-12);
  EXPECT_NEAR(r2.z_roots[1], (-1 + std::sqrt(5.0)) / 2, 1e-12);
  const auto r0 = solve_theta_thm1(0.5, 2.5, 0);
  EXPECT_EQ(r0.root_count, 0);
  EXPECT_TRUE(r0.theta_roots.empty());
}

TEST(SolveThetaThm1, Preconditions) {
  EXPECT_THROW(solve_theta_thm1(0, 0.5, 3), DomainError);
  EXPECT_THROW(solve_theta_thm1(1, 2.5, 3), DomainError);
  EXPECT_THROW(solve_theta_thm1(0, 4, -1), DomainError);
}

TEST(SolveThetaThm1, BoundaryIsFlagged) {
  const auto rep = solve_theta_thm1(0.5, 2, 6);
  EXPECT_TRUE(rep.boundary_mode);
  EXPECT_FALSE(solve_theta_thm1(0.5, 2.5, 6).boundary_mode);
}

TEST(SolveThetaThm1, MatchesAllRootsAndOrdering) {
  for (auto [a, b] : {std::pair{0.0, 1.2}, {0.0, 4.0}, {0.5, 2.5}, {-0.7, 3.0}, {1.0, 3.5}}) {
    for (int n : {5, 20, 50}) {
      const auto rep = solve_theta_thm1(a, b, n);
      ASSERT_EQ(rep.root_count, n);
      const auto p = thm1_poly(a, b, n);
      EXPECT_LE(multiset_distance(as_complex(rep.z_roots), all_roots(p).roots), 1e-7);
      for (std::size_t i = 0; i < rep.theta_roots.size(); ++i) {
        EXPECT_GT(rep.theta_roots[i], 0);
        EXPECT_LT(rep.theta_roots[i], pi);
        if (i) {
          EXPECT_LT(rep.theta_roots[i - 1], rep.theta_roots[i]);
          EXPECT_LT(rep.z_roots[i - 1], rep.z_roots[i]);
        }
        EXPECT_LE(std::abs(F_n_thm1(a, b, n, rep.theta_roots[i])), 1e-9);
        EXPECT_LE(relative_value(p, rep.z_roots[i]), 1e-8);
      }
    }
  }
}

TEST(ZThetaThm3, Examples) {
  EXPECT_NEAR(z_theta_thm3(pi / 2), 0, 1e-15);
  EXPECT_NEAR(z_theta_thm3(1e-9), -2, 1e-15);
  EXPECT_NEAR(z_theta_thm3(2 * pi / 3), 1, 1e-15);
}

TEST(T0Thm3, Examples) {
  EXPECT_DOUBLE_EQ(t0_thm3(0, 1, 0.3), -1);
  EXPECT_DOUBLE_EQ(t0_thm3(0, 0.5, 2.0), -2);
  try {
    t0_thm3(0.3, 0.2, std::acos(1.0 / 3));
    FAIL() << "expected a pole";
  } catch (const PoleError& e) {
    EXPECT_NEAR(e.theta_pole(), std::acos(1.0 / 3), 1e-15);
  }
  EXPECT_THROW(t0_thm3(0, 0, 1.0), DomainError);
}

TEST(GnThm3, SignOnGrid) {
  // Interior: |t0| = 2 > 1, sign (-1)^k.
  EXPECT_LT(G_n_thm3(0, 0.5, 2, pi / 3), 0);
  EXPECT_GT(G_n_thm3(0, 0.5, 2, 2 * pi / 3), 0);
  // Boundary b = 1: |t0| = 1 and the k = 1 value degenerates to 0.
  EXPECT_NEAR(G_n_thm3(0, 1, 2, pi / 3), 0, 1e-15);
  EXPECT_NEAR(G_n_thm3(0, 1, 2, 2 * pi / 3), 2, 1e-15);
}

TEST(GnThm3, Errors) {
  EXPECT_THROW(G_n_thm3(0, 0, 3, 1.0), DomainError);
  EXPECT_THROW(G_n_thm3(0, 0.5, 3, pi), DomainError);
}

TEST(GnThm3, ProportionalToPn) {
  // G_n(theta) = -(t0^2 - 2 t0 cos(theta) + 1) / t0 * P_n(-2 cos theta).
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ua(-1, 1), ub(-1.5, 1.5), th(0.01, pi - 0.01);
  std::uniform_int_distribution<int> un(1, 25);
  for (int s = 0; s < 100; ++s) {
    const double a = ua(rng), b = ub(rng), t = th(rng);
    const int n = un(rng);
    const double den = b - 2 * a * std::cos(t);
    if (std::abs(den) < 1e-3) continue;
    const double t0 = t0_thm3(a, b, t);
    const auto p = polynomial_cast<quad>(thm3_poly(a, b, n));
    const double pz = static_cast<double>(p(static_cast<quad>(z_theta_thm3(t))));
    const double factor = -(t0 * t0 - 2 * t0 * std::cos(t) + 1) / t0;
    const double g = G_n_thm3(a, b, n, t);
    EXPECT_NEAR(g, factor * pz, 1e-9 * (1 + std::abs(g))) << a << " " << b << " n=" << n;
  }
}

TEST(HnThm3, PoleClearedProduct) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> ua(-1, 1), ub(-1.5, 1.5), th(0.01, pi - 0.01);
  for (int s = 0; s < 100; ++s) {
    const double a = ua(rng), b = ub(rng), t = th(rng);
    const int n = 1 + s % 17;
    const double u = b - 2 * a * std::cos(t);
    const auto p = polynomial_cast<quad>(thm3_poly(a, b, n));
    const double pz = static_cast<double>(p(static_cast<quad>(z_theta_thm3(t))));
    const double h = H_n_thm3(a, b, n, t);
    EXPECT_NEAR(h, std::norm(1.0 + u * std::polar(1.0, t)) * pz, 1e-9 * (1 + std::abs(h)));
    if (std::abs(u) > 1e-3) {
      EXPECT_NEAR(h, u * G_n_thm3(a, b, n, t), 1e-9 * (1 + std::abs(h)));
    }
  }
  EXPECT_NEAR(H_n_thm3(0, 0, 4, 0.9), std::sin(5 * 0.9) / std::sin(0.9), 1e-14);
}

TEST(GnThm3, SolvedRootIsRootOfP3) {
  const auto rep = solve_theta_thm3(0.1, 0.7, 3);
  ASSERT_EQ(rep.root_count, 3);
  const auto roots = all_roots(thm3_poly(0.1, 0.7, 3)).roots;
  for (double t : rep.theta_roots) {
    EXPECT_LE(std::abs(G_n_thm3(0.1, 0.7, 3, t)), 1e-10);
    double best = INFINITY;
    for (auto r : roots) best = std::min(best, std::abs(r - z_theta_thm3(t)));
    EXPECT_LE(best, 1e-7);
  }
}

TEST(LimitsThm3, Examples) {
  const auto l = limits_thm3(0, 1, 2);
  EXPECT_DOUBLE_EQ(l.left, 8);
  EXPECT_DOUBLE_EQ(l.right, 0);
  EXPECT_TRUE(l.right_cancels);
  EXPECT_FALSE(l.left_cancels);
  const auto c = limits_thm3(0, 2, 1);
  EXPECT_EQ(c.left, 0);
  EXPECT_TRUE(c.left_cancels);
  EXPECT_THROW(limits_thm3(0.5, 1, 3), DomainError);
  EXPECT_THROW(limits_thm3(0.5, -1, 3), DomainError);
}

TEST(LimitsThm3, MatchOneSidedValues) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ua(-1, 1), ub(-1.5, 1.5);
  std::uniform_int_distribution<int> un(0, 20);
  int tested = 0;
  while (tested < 30) {
    const double a = ua(rng), b = ub(rng);
    const int n = un(rng);
    if (std::abs(b - 2 * a) < 0.1 || std::abs(b + 2 * a) < 0.1) continue;
    const auto l = limits_thm3(a, b, n);
    // Limits reach 1e8 for |b -+ 2a| near 3 and n = 20; compare relative to
    // the magnitude once it exceeds 1.
    EXPECT_NEAR(G_n_thm3(a, b, n, 1e-6), l.left, 1e-4 * std::max(1.0, std::abs(l.left))) << a << " " << b << " " << n;
    EXPECT_NEAR(G_n_thm3(a, b, n, pi - 1e-6), l.right, 1e-4 * std::max(1.0, std::abs(l.right))) << a << " " << b << " " << n;
    ++tested;
  }
}

TEST(SolveThetaThm3, Examples) {
  const auto rep = solve_theta_thm3(0, 0.5, 2);
  ASSERT_EQ(rep.root_count, 2);
  EXPECT_FALSE(rep.asymptote.has_value());
  // P_2 = (1.5 z + 0.5)(...): compare with the quadratic formula.
  const auto p2 = polynomial_cast<double>(thm3_poly(0, 0.5, 2));
  const double A = p2.coeff(2), B = p2.coeff(1), C = p2.coeff(0);
  const double disc = std::sqrt(B * B - 4 * A * C);
  EXPECT_NEAR(rep.z_roots[0], std::min((-B - disc) / (2 * A), (-B + disc) / (2 * A)), 1e-12);
  EXPECT_NEAR(rep.z_roots[1], std::max((-B - disc) / (2 * A), (-B + disc) / (2 * A)), 1e-12);
}

TEST(SolveThetaThm3, AsymptoteBookkeeping) {
  for (double a : {0.25, -0.25}) {
    const auto rep = solve_theta_thm3(a, 0.1, 3);
    ASSERT_TRUE(rep.asymptote.has_value());
    EXPECT_NEAR(rep.asymptote->theta_a, std::acos(0.1 / (2 * a)), 1e-15);
    EXPECT_EQ(rep.asymptote->k0, static_cast<int>(rep.asymptote->theta_a / (pi / 4)));
    EXPECT_GE(rep.root_count, 3);
    EXPECT_LE(multiset_distance(as_complex(rep.z_roots), all_roots(thm3_poly(a, 0.1, 3)).roots), 1e-7);
    for (const auto& br : rep.brackets) {
      EXPECT_FALSE(br.lo < rep.asymptote->theta_a && rep.asymptote->theta_a < br.hi);
    }
  }
}

TEST(SolveThetaThm3, AsymptoteOnGridPointIsPerturbed) {
  // theta_a = arccos(0) = pi/2 = 2 pi/4 for n = 3.
  const auto rep = solve_theta_thm3(0.25, 0, 3);
  ASSERT_EQ(rep.perturbations.size(), 1u);
  EXPECT_EQ(rep.perturbations[0], "a += 1e-09");
  EXPECT_EQ(rep.root_count, 3);
  EXPECT_LE(multiset_distance(as_complex(rep.z_roots), all_roots(thm3_poly(0.25, 0, 3)).roots), 1e-7);
}

TEST(SolveThetaThm3, DegenerateOriginSolvesChebyshevCase) {
  const auto rep = solve_theta_thm3(0, 0, 6);
  EXPECT_TRUE(rep.perturbations.empty());
  EXPECT_TRUE(rep.boundary_mode);
  ASSERT_EQ(rep.root_count, 6);
  for (int k = 1; k <= 6; ++k) EXPECT_NEAR(rep.z_roots[static_cast<std::size_t>(k - 1)], -2 * std::cos(k * pi / 7), 1e-7);
}

TEST(SolveThetaThm3, Preconditions) {
  EXPECT_THROW(solve_theta_thm3(0, 2, 3), DomainError);
  EXPECT_THROW(solve_theta_thm3(0.5, 0.5, 3), DomainError);
  EXPECT_TRUE(solve_theta_thm3(0, 1, 3).boundary_mode);
  EXPECT_TRUE(solve_theta_thm3(0.25, 0.5, 3).boundary_mode);
}

TEST(SolveThetaThm3, MatchesAllRoots) {
  for (auto [a, b] : {std::pair{0.0, 0.0}, {0.0, 0.9}, {0.25, 0.4}, {-0.25, -0.4}, {0.45, 0.05}, {-0.3, 0.2}}) {
    for (int n : {5, 20, 50}) {
      const auto rep = solve_theta_thm3(a, b, n);
      ASSERT_GE(rep.root_count, n);
      const auto p = thm3_poly(a, b, n);
      EXPECT_LE(multiset_distance(as_complex(rep.z_roots), all_roots(p).roots), 1e-7) << a << " " << b << " " << n;
      for (std::size_t i = 1; i < rep.z_roots.size(); ++i) EXPECT_LT(rep.z_roots[i - 1], rep.z_roots[i]);
      for (double z : rep.z_roots) EXPECT_LE(relative_value(p, z), 1e-8) << a << " " << b << " " << n << " z=" << z;
    }
  }
}

TEST(DensityStats, Examples) {
  EXPECT_DOUBLE_EQ(density_stats({-1.0, 1.0}, -2, 2), 2);
  EXPECT_DOUBLE_EQ(density_stats({1.5, -1.0, 0.0}, -2, 2), 1.5);
  EXPECT_THROW(density_stats({0.0}, -2, 2), UndefinedStatisticError);
  EXPECT_THROW(density_stats(solve_theta_thm1(0, 4, 1)), UndefinedStatisticError);
}

TEST(DensityStats, GapsShrinkWithN) {
  EXPECT_LT(density_stats(solve_theta_thm1(0, 4, 40)), density_stats(solve_theta_thm1(0, 4, 10)));
  EXPECT_LT(density_stats(solve_theta_thm3(0, 0.5, 50)), density_stats(solve_theta_thm3(0, 0.5, 10)));
}

TEST(Dual, DerivativesOfElementaryFunctions) {
  const Dual x = Dual::variable(0.7);
  const Dual y = sin(x) * cos(x) / sqrt(x) + powi(x, 3);
  const double v = 0.7;
  const double expect = (std::cos(2 * v) * std::sqrt(v) - std::sin(v) * std::cos(v) / (2 * std::sqrt(v))) / v + 3 * v * v;
  EXPECT_NEAR(y.d, expect, 1e-14);
}

TEST(RefineRoot, ConvergesInsideBracket) {
  auto f = [](auto x) { return x * x - Dual(2.0); };
  const auto r = refine_root([&](auto x) { return f(Dual(x)); }, 0.0, 2.0, -2.0);
  EXPECT_NEAR(r.x, std::sqrt(2.0), 1e-13);
}

}  // namespace
}  // namespace rz
