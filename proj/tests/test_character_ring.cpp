#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "eulerprod/character_ring.hpp"
#include "oracles.hpp"

using namespace eulerprod;

namespace {

std::vector<double> random_angles(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  // stay off 0 and pi, where the sin-ratio oracle is 0/0
  std::uniform_real_distribution<double> u(1e-3, std::numbers::pi - 1e-3);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(u(rng));
  return out;
}

double oracle_eval(const VirtualCharacter& h, double t) {
  double s = 0.0;
  for (std::size_t m = 0; m < h.coeffs().size(); ++m) s += h.coeffs()[m].get_d() * oracle::chi(m, t);
  return s;
}

VirtualCharacter random_character(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 6), c(-4, 4);
  std::vector<mpz_class> v(len(rng));
  for (auto& x : v) x = c(rng);
  return VirtualCharacter(v);
}

}  // namespace

TEST(CharacterRing, EvalMatchesTrigOracleAndLimits) {
  const auto h = VirtualCharacter{3, -1, 0, 2, 5};
  for (double t : random_angles(50, 3)) EXPECT_NEAR(h.eval(t), oracle_eval(h, t), 1e-10);
  for (std::size_t m = 0; m < 8; ++m) {
    const auto chi = VirtualCharacter::irreducible(m);
    EXPECT_NEAR(chi.eval(0.0), m + 1.0, 1e-12);
    EXPECT_NEAR(chi.eval(std::numbers::pi), (m % 2 ? -1.0 : 1.0) * (m + 1.0), 1e-12);
  }
}

TEST(CharacterRing, ClebschGordanExamples) {
  const auto chi = [](std::size_t m) { return VirtualCharacter::irreducible(m); };
  EXPECT_EQ(mul(chi(0), chi(5)), chi(5));
  EXPECT_EQ(mul(chi(1), chi(1)), chi(0) + chi(2));
  EXPECT_EQ(mul(chi(1), chi(2)), chi(1) + chi(3));
  EXPECT_EQ(mul(chi(2), chi(2)), chi(0) + chi(2) + chi(4));
  // trigonometric oracle: sin(2t)^2/sin(t)^2 = 1 + sin(3t)/sin(t)
  for (double t : random_angles(20, 5)) {
    EXPECT_NEAR(oracle::chi(1, t) * oracle::chi(1, t), oracle::chi(0, t) + oracle::chi(2, t), 1e-10);
    EXPECT_NEAR(oracle::chi(1, t) * oracle::chi(2, t), oracle::chi(1, t) + oracle::chi(3, t), 1e-10);
  }
}

TEST(CharacterRing, EvaluationIsRingHomomorphism) {
  std::mt19937_64 rng(99);
  const auto angles = random_angles(20, 17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_character(rng), y = random_character(rng);
    const auto xy = mul(x, y);
    const auto s = x + y;
    for (double t : angles) {
      EXPECT_NEAR(xy.eval(t), x.eval(t) * y.eval(t), 1e-10);
      EXPECT_NEAR(s.eval(t), x.eval(t) + y.eval(t), 1e-10);
    }
  }
}

TEST(CharacterRing, FromPolynomialExamples) {
  const auto chi = [](std::size_t m) { return VirtualCharacter::irreducible(m); };
  EXPECT_EQ(from_polynomial(parse_polynomial("x")), chi(1));
  EXPECT_EQ(from_polynomial(parse_polynomial("x^2-2")), chi(2) - chi(0));
  EXPECT_EQ(from_polynomial(parse_polynomial("x^3-3x")), chi(3) - chi(1));
  EXPECT_EQ(from_polynomial(parse_polynomial("7")), (VirtualCharacter{7}));
}

TEST(CharacterRing, FromPolynomialPointwiseAndDegree) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> deg(1, 7), c(-6, 6);
  const auto angles = random_angles(100, 23);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<mpz_class> v(deg(rng) + 1);
    for (auto& x : v) x = c(rng);
    v.back() = 1;
    const IntPolynomial f(v);
    const auto h = from_polynomial(f);
    EXPECT_EQ(h.top(), f.degree());
    EXPECT_EQ(h.coeff(f.degree()), 1);
    EXPECT_EQ(to_polynomial(h), f);
    for (double t : angles) EXPECT_NEAR(h.eval(t), f.eval(2.0 * std::cos(t)), 1e-10);
  }
}

TEST(CharacterRing, CosCharacter) {
  EXPECT_EQ(cos_character(0), (VirtualCharacter{2}));
  EXPECT_EQ(cos_character(1), VirtualCharacter::irreducible(1));
  EXPECT_EQ(cos_character(3), VirtualCharacter::irreducible(3) - VirtualCharacter::irreducible(1));
  for (std::size_t m = 0; m <= 10; ++m) {
    EXPECT_EQ(cos_character(m), from_polynomial(dilated_chebyshev(m)));
    for (double t : random_angles(20, 41 + m)) EXPECT_NEAR(cos_character(m).eval(t), 2 * std::cos(m * t), 1e-10);
  }
}

TEST(CharacterRing, UnitarityExamples) {
  for (int sign : {1, -1}) {
    const auto r = unitarity_test({sign, VirtualCharacter::irreducible(1)});
    EXPECT_EQ(r.verdict, UnitarityVerdict::Unitary);
  }
  const auto r3 = unitarity_test({1, VirtualCharacter{3}});
  EXPECT_EQ(r3.verdict, UnitarityVerdict::NonUnitary);
  EXPECT_NEAR(r3.value, 3.0, 1e-12);
  for (std::size_t m = 0; m <= 10; ++m)
    EXPECT_EQ(unitarity_test({-1, cos_character(m)}).verdict, UnitarityVerdict::Unitary) << m;
  // strictly inside the band: chi_0 has |h| = 1
  EXPECT_EQ(unitarity_test({1, VirtualCharacter{1}}).verdict, UnitarityVerdict::Unitary);
  EXPECT_FALSE(unitarity_test({1, VirtualCharacter{1}}).exact);
}

TEST(CharacterRing, NonUnitaryWitnessIsReal) {
  const auto h = from_polynomial(parse_polynomial("x^2-1"));
  const auto r = unitarity_test({-1, h});
  ASSERT_EQ(r.verdict, UnitarityVerdict::NonUnitary);
  EXPECT_GT(std::abs(h.eval(r.theta)), 2.0 + 1e-9);
}

// h = 2cos(2t) touches 2 at t = 0, pi/2, pi; the float search lands in the
// ambiguity band and the verdict comes from the exact polynomial route.
TEST(CharacterRing, TangentMaximumIsCertifiedExactly) {
  const auto r = unitarity_test({1, cos_character(2)}, 16);
  EXPECT_EQ(r.verdict, UnitarityVerdict::Unitary);
  EXPECT_TRUE(r.exact);
  EXPECT_THROW(unitarity_test({1, cos_character(2)}, 15), InvalidInput);
}
