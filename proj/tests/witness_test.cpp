#include "rz/witness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace rz {
namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

std::vector<double> moduli(const WitnessReport& r) {
  std::vector<double> m;
  for (const auto& z : r.t_zeros) m.push_back(z.modulus);
  return m;
}

bool has_zero(const WitnessReport& r, cd t, double tol = 1e-12) {
  for (const auto& z : r.t_zeros)
    if (z.finite && std::abs(z.t - t) <= tol) return true;
  return false;
}

void expect_certified(const WitnessReport& r) {
  EXPECT_TRUE(r.checks.z_star_nonreal) << r.case_tag;
  EXPECT_TRUE(r.checks.moduli_ordering_ok) << r.case_tag << " gap " << r.checks.moduli_gap;
  EXPECT_LE(r.checks.max_residual, 1e-10) << r.case_tag;
  EXPECT_TRUE(r.checks.zeros_distinct) << r.case_tag;
  EXPECT_TRUE(r.fully_certified());
}

// --- thm1, b <= -1 ------------------------------------------------------------

TEST(WitnessThm1Low, ImaginaryWitnessForBMinusFour) {
  const auto r = witness_thm1_low(0, -4);
  EXPECT_EQ(r.case_tag, "Thm1-bLeNeg1");
  ASSERT_TRUE(r.theta_star);
  EXPECT_DOUBLE_EQ(*r.theta_star, pi / 3);
  EXPECT_NEAR(std::abs(r.z_star - cd(0, 2)), 0, 1e-14);
  const auto m = moduli(r);
  EXPECT_NEAR(m[0], 0.5, 1e-14);
  EXPECT_NEAR(m[1], 0.5, 1e-14);
  EXPECT_NEAR(m[2], 1, 1e-14);
  // Zeros of -4t^2 + 2it + 1 are (+-sqrt3 + i)/4.
  EXPECT_TRUE(has_zero(r, cd(std::sqrt(3.0), 1) / 4.0));
  EXPECT_TRUE(has_zero(r, cd(-std::sqrt(3.0), 1) / 4.0));
  EXPECT_TRUE(has_zero(r, -1.0));
  expect_certified(r);
}

TEST(WitnessThm1Low, TauModulusAtBMinusOne) {
  const auto r = witness_thm1_low(0, -1);
  ASSERT_TRUE(r.tau_star);
  EXPECT_NEAR(std::abs(*r.tau_star), 1, 1e-15);
  expect_certified(r);
}

TEST(WitnessThm1Low, TauModulusSquaredIsMinusOneOverB) {
  for (double a : {-2.0, -0.3, 0.0, 0.7, 3.0})
    for (double b : {-1.0, -1.5, -4.0, -10.0}) {
      const auto r = witness_thm1_low(a, b);
      EXPECT_NEAR(std::norm(*r.tau_star), -1 / b, 1e-14) << a << " " << b;
      expect_certified(r);
    }
}

TEST(WitnessThm1Low, PickerAvoidsRightAngle) {
  WitnessOptions opt;
  opt.theta_start = pi / 2;
  const auto r = witness_thm1_low(1, -2, opt);
  ASSERT_TRUE(r.theta_star);
  EXPECT_GT(std::abs(std::cos(*r.theta_star)), 1e-6);
  EXPECT_GT(std::abs(r.z_star.imag()), 1e-9);
}

TEST(WitnessThm1Low, LargeAForcesThetaTowardRightAngle) {
  // a^2 cos^2(pi/3) = 25 >= 2, so pi/3 is rejected.
  const auto r = witness_thm1_low(10, -2);
  ASSERT_TRUE(r.theta_star);
  EXPECT_LT(100 * std::pow(std::cos(*r.theta_star), 2), 2);
  expect_certified(r);
}

TEST(WitnessThm1Low, Preconditions) {
  EXPECT_THROW(witness_thm1_low(0, -0.5), DomainError);
  EXPECT_THROW(witness_thm1_low(0, 4), DomainError);
}

// --- thm1, -1 < b < 1+2|a| -------------------------------------------------------

TEST(WitnessThm1Mid, ExampleAtPiOverThree) {
  WitnessOptions opt;
  opt.theta_start = pi / 3;
  const auto r = witness_thm1_mid(1, 0, opt);
  EXPECT_EQ(r.case_tag, "Thm1-mid");
  EXPECT_NEAR(std::abs(r.z_star - cd(0, 1 / std::sqrt(3.0))), 0, 1e-14);
  const auto m = moduli(r);
  EXPECT_NEAR(m[0], 1, 1e-14);
  EXPECT_NEAR(m[1], 1, 1e-14);
  EXPECT_NEAR(m[2], std::sqrt(3.0), 1e-13);
  EXPECT_TRUE(has_zero(r, std::polar(1.0, pi / 3)));
  expect_certified(r);
}

TEST(WitnessThm1Mid, DegenerateQuadraticHasZeroAtInfinity) {
  const auto r = witness_thm1_mid(0, 0);
  ASSERT_TRUE(r.theta_star);
  EXPECT_DOUBLE_EQ(*r.theta_star, pi / 4);
  EXPECT_NEAR(std::abs(r.z_star + std::polar(1.0, -pi / 4)), 0, 1e-15);
  ASSERT_EQ(r.t_zeros.size(), 3u);
  EXPECT_FALSE(r.t_zeros[2].finite);
  EXPECT_NEAR(r.t_zeros[0].modulus, 1, 1e-15);
  EXPECT_NEAR(r.t_zeros[1].modulus, 1, 1e-15);
  EXPECT_TRUE(has_zero(r, std::polar(1.0, pi / 4)));
  expect_certified(r);
}

TEST(WitnessThm1Mid, HalfGivesUnitPairAndOuterZero) {
  const auto r = witness_thm1_mid(0, 0.5);
  const auto m = moduli(r);
  EXPECT_NEAR(m[0], 1, 1e-14);
  EXPECT_NEAR(m[1], 1, 1e-14);
  EXPECT_GT(m[2], 1);
  expect_certified(r);
}

TEST(WitnessThm1Mid, NegativeAsweepsTowardPi) {
  const auto r = witness_thm1_mid(-0.5, 0);
  ASSERT_TRUE(r.theta_star);
  EXPECT_GT(*r.theta_star, pi / 2);
  expect_certified(r);
}

TEST(WitnessThm1Mid, Preconditions) {
  EXPECT_THROW(witness_thm1_mid(0, -1), DomainError);
  EXPECT_THROW(witness_thm1_mid(1, 3), DomainError);
  EXPECT_THROW(witness_thm1(0, 4), DomainError);
  EXPECT_THROW(witness_thm1(-0.5, 2), DomainError);
  EXPECT_EQ(witness_thm1(0, -2).case_tag, "Thm1-bLeNeg1");
  EXPECT_EQ(witness_thm1(1, 2.5).case_tag, "Thm1-mid");
}

TEST(WitnessThm1, RandomPointsOutsideSufficientRegionAreCertified) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ua(-3, 3), ub(-4, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const double a = ua(rng);
    const double b = ub(rng) * (1 + 2 * std::abs(a)) * 0.99;
    if (b >= 1 + 2 * std::abs(a) - 0.01) continue;
    const auto r = witness_thm1(a, b);
    expect_certified(r);
  }
}

// --- thm2 (c < 0) -----------------------------------------------------------------

TEST(WitnessThm2, SmallBUnitCirclePair) {
  const auto r = witness_thm2(0, 0.5, -1);
  EXPECT_EQ(r.case_tag, "Thm2-smallB");
  ASSERT_TRUE(r.y_star);
  EXPECT_DOUBLE_EQ(*r.y_star, 1);
  EXPECT_NEAR(std::abs(r.z_star - cd(0, 1)), 0, 1e-15);
  // -t^2 + it + 1 = 0 at t = (i +- sqrt3)/2; linear zero -1/b = -2.
  EXPECT_TRUE(has_zero(r, cd(std::sqrt(3.0), 1) / 2.0));
  EXPECT_TRUE(has_zero(r, cd(-std::sqrt(3.0), 1) / 2.0));
  EXPECT_TRUE(has_zero(r, -2.0));
  expect_certified(r);
}

TEST(WitnessThm2, NormalizesNegativeC) {
  const auto r = witness_thm2(1, 0, -4);
  EXPECT_EQ(r.case_tag, "Thm2-smallB");
  // Normalized y* = min(1, 2)/2 = 1/2, scaled back by sqrt 4.
  EXPECT_NEAR(std::abs(r.z_star - cd(0, 1)), 0, 1e-15);
  EXPECT_LT(r.z_star.imag() / 2, 1.0);
  const auto m = moduli(r);
  EXPECT_NEAR(m[0], 0.5, 1e-15);
  EXPECT_NEAR(m[1], 0.5, 1e-15);
  expect_certified(r);
}

TEST(WitnessThm2, BigBWithZeroA) {
  const auto r = witness_thm2(0, 2, -1);
  EXPECT_EQ(r.case_tag, "Thm2-bigB");
  // Linear zero -1/2 matches the smaller zero of -t^2 + z t + 1 in modulus.
  EXPECT_TRUE(has_zero(r, -0.5));
  EXPECT_NEAR(r.t_zeros[0].modulus, 0.5, 1e-15);
  EXPECT_NEAR(r.t_zeros[1].modulus, 0.5, 1e-15);
  EXPECT_NEAR(std::abs(r.z_star - cd(0, -2.5)), 0, 1e-15);
  expect_certified(r);
}

TEST(WitnessThm2, BigBWithNonzeroA) {
  const auto r = witness_thm2(0.5, 2, -1);
  EXPECT_EQ(r.case_tag, "Thm2-bigB");
  expect_certified(r);
}

TEST(WitnessThm2, RandomNegativeC) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3), uc(0.1, 9);
  for (int trial = 0; trial < 300; ++trial) {
    const auto r = witness_thm2(u(rng), u(rng), -uc(rng));
    expect_certified(r);
  }
}

TEST(WitnessThm2, Preconditions) {
  EXPECT_THROW(witness_thm2(0, 0.5, 0), DomainError);
  EXPECT_THROW(witness_thm2(0, 0.5, 1), DomainError);
}

// --- thm3 ------------------------------------------------------------------------

TEST(WitnessThm3, CaseOneWithZeroA) {
  const auto r = witness_thm3(0, 2);
  EXPECT_EQ(r.case_tag, "Thm3-case1");
  ASSERT_TRUE(r.theta_star);
  EXPECT_DOUBLE_EQ(*r.theta_star, pi / 2);
  EXPECT_NEAR(std::abs(r.z_star - cd(0, -1.5)), 0, 1e-15);
  EXPECT_TRUE(has_zero(r, -0.5));
  EXPECT_TRUE(has_zero(r, cd(0, -0.5)));
  EXPECT_TRUE(has_zero(r, cd(0, 2)));
  const auto m = moduli(r);
  EXPECT_NEAR(m[0], 0.5, 1e-15);
  EXPECT_NEAR(m[1], 0.5, 1e-15);
  EXPECT_NEAR(m[2], 2, 1e-15);
  expect_certified(r);
}

TEST(WitnessThm3, CaseOneGeneralAssertsAzPlusBAboveOne) {
  const auto r = witness_thm3(0.5, 0.8);
  EXPECT_EQ(r.case_tag, "Thm3-case1");
  EXPECT_GT(std::abs(0.5 * r.z_star + 0.8), 1);
  ASSERT_TRUE(r.theta_star);
  EXPECT_LT(*r.theta_star, pi / 2);
  expect_certified(r);
}

TEST(WitnessThm3, CaseOneLimitOfAzPlusB) {
  // |az+b| -> (|b| + sqrt(b^2 - 4a^2 + 4|a|))/(2 - 2|a|) as e^{i theta} -> sign a.
  const double a = 0.5, b = 0.8;
  const double lim = (b + std::sqrt(b * b - 4 * a * a + 4 * a)) / (2 - 2 * a);
  WitnessOptions opt;
  opt.theta_start = 1e-7;
  const auto r = witness_thm3(a, b, opt);
  EXPECT_NEAR(std::abs(a * r.z_star + b), lim, 1e-6);
}

TEST(WitnessThm3, CaseOneZeroB) {
  const auto r = witness_thm3(1, 0);
  EXPECT_EQ(r.case_tag, "Thm3-case1");
  expect_certified(r);
  // Also fine strictly between 1/2 and 1.
  expect_certified(witness_thm3(0.8, 0));
  expect_certified(witness_thm3(-0.6, 0));
}

TEST(WitnessThm3, CaseTwoImaginaryAxis) {
  const auto r = witness_thm3(2, 0);
  EXPECT_EQ(r.case_tag, "Thm3-case2");
  ASSERT_TRUE(r.y_star);
  EXPECT_NEAR(*r.y_star, 1 / std::sqrt(2.0), 1e-9);
  const double smaller = (std::sqrt(4.5) - 1 / std::sqrt(2.0)) / 2;
  EXPECT_NEAR(r.t_zeros[0].modulus, 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(r.t_zeros[1].modulus, smaller, 1e-12);
  EXPECT_TRUE(r.certified());
  // b = 0 puts t0 on the smaller quadratic zero.
  EXPECT_FALSE(r.checks.zeros_distinct);
  EXPECT_FALSE(r.notes.empty());
}

TEST(WitnessThm3, CaseTwoWithNonzeroBHasDistinctZeros) {
  expect_certified(witness_thm3(2, 0.5));
  expect_certified(witness_thm3(-1.5, -0.9));
}

TEST(WitnessThm3, CaseThreeDispatch) {
  const auto r3a = witness_thm3(1.5, 1.5);
  EXPECT_EQ(r3a.case_tag, "Thm3-case3a");
  expect_certified(r3a);
  // 2 + 1.5 <= 4: the maximum-modulus branch.
  const auto r = witness_thm3(2, 1.5);
  EXPECT_EQ(r.case_tag, "Thm3-case3b");
  expect_certified(r);
}

TEST(WitnessThm3, CaseThreeBAtQuarterTurn) {
  const auto r = witness_thm3(3, 1);
  EXPECT_EQ(r.case_tag, "Thm3-case3b");
  ASSERT_TRUE(r.theta_star);
  EXPECT_DOUBLE_EQ(*r.theta_star, pi / 4);
  // |t0| = |t1| = 1/|f(e^{i pi/4})| with |f| about 1.087.
  EXPECT_NEAR(1 / r.t_zeros[0].modulus, 1.087, 1e-3);
  expect_certified(r);
}

TEST(WitnessThm3, CutAlongPositiveAxis) {
  using detail::sqrt_cut_positive;
  for (cd w : {cd(-4, 0), cd(-4, -1e-12), cd(3, -1e-9), cd(0.5, 2), cd(-1, -3)}) {
    const cd s = sqrt_cut_positive(w);
    EXPECT_NEAR(std::abs(s * s - w), 0, 1e-14 * std::max(1.0, std::abs(w)));
    EXPECT_GE(s.imag(), 0);
  }
  EXPECT_NEAR(std::abs(sqrt_cut_positive(cd(-4, 0)) - cd(0, 2)), 0, 1e-15);
}

TEST(WitnessThm3, RandomPointsOutsideSufficientRegion) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3, 3);
  int tried = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const double a = u(rng), b = u(rng);
    if (std::abs(b) + 2 * std::abs(a) <= 1.02) continue;
    ++tried;
    const auto r = witness_thm3(a, b);
    expect_certified(r);
  }
  EXPECT_GT(tried, 300);
}

TEST(WitnessThm3, Preconditions) {
  EXPECT_THROW(witness_thm3(0.25, 0.4), DomainError);
  EXPECT_THROW(witness_thm3(0, 1), DomainError);
  EXPECT_THROW(witness_thm3(0.4, 0.1), DomainError);
}

// --- verify_witness -------------------------------------------------------------------

TEST(VerifyWitness, FirstNonRealIndexIsTwoForHalf) {
  // P_2 = z^2 + z + 1/2 has discriminant -1.
  const auto r = verify_witness(witness_thm1(0, 0.5), 20);
  ASSERT_TRUE(r.empirical);
  EXPECT_EQ(r.empirical->n_found, 2);
}

TEST(VerifyWitness, ZerosApproachThm3Witness) {
  const auto r = verify_witness(witness_thm3(0, 2), 80);
  ASSERT_TRUE(r.empirical);
  EXPECT_LE(r.empirical->n_found, 80);
  EXPECT_LT(r.empirical->dist_to_zstar, 0.2);
  EXPECT_LT(r.empirical->dist_to_zstar, *r.empirical->dist_at_20);
  EXPECT_TRUE(r.empirical->distance_shrank);
}

TEST(VerifyWitness, DistanceShrinksForThm1AndThm3Points) {
  for (const auto& w : {witness_thm1(0, -2), witness_thm1(1, 2.5), witness_thm3(2, 1.5), witness_thm3(3, 1)}) {
    const auto r = verify_witness(w, 80);
    EXPECT_TRUE(r.empirical->distance_shrank) << r.case_tag << " " << r.a << " " << r.b;
  }
}

TEST(VerifyWitness, OscillatingDistanceMatchesHighPrecisionOracle) {
  // Nearest zero of P_n to z* from 80-digit polyroots: 0.0123219492 (n=20),
  // 0.0431080448 (n=80). The distance is not monotone in n here.
  const auto r = verify_witness(witness_thm1(0, 0.5), 80);
  EXPECT_NEAR(*r.empirical->dist_at_20, 0.01232194924161106, 1e-8);
  EXPECT_NEAR(r.empirical->dist_to_zstar, 0.04310804482160736, 1e-8);
  EXPECT_FALSE(r.empirical->distance_shrank);
}

TEST(VerifyWitness, IllConditionedZerosMatchHighPrecisionOracle) {
  // 80-digit oracle: 0.0077834145974 at n = 80 for thm3 (2, 1.5).
  const auto r = verify_witness(witness_thm3(2, 1.5), 80);
  EXPECT_NEAR(r.empirical->dist_to_zstar, 0.0077834145974484915, 1e-8);
}

TEST(VerifyWitness, SkipsIdenticallyZeroMembers) {
  // thm3 (-1, 0): denominator 1 + (1 - z^2)t^2 - z t^3 has no t term, P_1 = 0.
  const auto r = verify_witness(witness_thm3(-1, 0), 30);
  EXPECT_GE(r.empirical->n_found, 2);
}

TEST(VerifyWitness, HyperbolicRegionFails) {
  EXPECT_THROW(verify_point(WitnessFamily::Thm1, 0, 4, 1, 1, 80), VerificationFailureError);
}

TEST(VerifyWitness, RejectsUncertifiedReport) {
  WitnessReport r;
  EXPECT_THROW(verify_witness(r, 10), DomainError);
  EXPECT_THROW(verify_witness(witness_thm1(0, 0.5), 0), DomainError);
}

TEST(VerifyWitness, Thm2FamilyUsesCDirectly) {
  const auto r = verify_witness(witness_thm2(1, 0, -4), 40);
  EXPECT_LE(r.empirical->n_found, 40);
}

}  // namespace
}  // namespace rz
