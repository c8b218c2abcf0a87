#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "eulerprod/satotate.hpp"

using namespace eulerprod;

namespace {
const TauTable& table() {
  static const TauTable t = expand_delta(20000);
  return t;
}
}  // namespace

TEST(SatoTate, NormalizedTauAtTwo) {
  const auto angles = build_angles(table(), 10);
  EXPECT_NEAR(angles.at(2).a, -0.5303300858899106, 1e-15);
  EXPECT_EQ(angles.size(), 4u);
  EXPECT_THROW(angles.at(4), std::out_of_range);
}

TEST(SatoTate, AngleOfExtremes) {
  EXPECT_EQ(angle_from_coefficient(2.0), 0.0);
  EXPECT_NEAR(angle_from_coefficient(0.0), std::numbers::pi / 2, 1e-16);
  EXPECT_NEAR(angle_from_coefficient(-2.0), std::numbers::pi, 0.0);
  // rounding just past the edge clamps instead of producing NaN
  EXPECT_EQ(angle_from_coefficient(2.0 + 1e-15), 0.0);
}

TEST(SatoTate, CutoffBeyondTableRejected) {
  const auto t = expand_delta(100);
  EXPECT_THROW(build_angles(t, 101), InvalidInput);
}

TEST(SatoTate, DeligneViolationIsInconsistency) {
  std::vector<mpz_class> v = {1, 100000, 252};  // |tau(2)| far above 2*2^{11/2}
  const auto bogus = TauTable::from_values(v);
  EXPECT_THROW(build_angles(bogus, 3), Inconsistency);
}

// High-precision normalization matters: tau(p) has more than 53 bits for
// large p, and the angle contract is 1e-12.
TEST(SatoTate, AngleTableInvariants) {
  const auto angles = build_angles(table(), 20000);
  Prime prev = 0;
  for (const auto& e : angles.entries()) {
    EXPECT_GT(e.p, prev);
    prev = e.p;
    EXPECT_LE(std::abs(e.a), 2.0);
    EXPECT_NEAR(2.0 * std::cos(e.theta), e.a, 1e-12) << e.p;
    EXPECT_GE(e.theta, 0.0);
    EXPECT_LE(e.theta, std::numbers::pi);
  }
}

TEST(SatoTate, NormalizedHeckeRelation) {
  const auto angles = build_angles(table(), 141);
  for (const auto& e : angles.entries()) {
    const double a_p2 = normalize(table().at(std::uint64_t{e.p} * e.p), e.p, 22);
    EXPECT_NEAR(a_p2, e.a * e.a - 1.0, 1e-12) << e.p;
  }
}

TEST(SatoTate, CdfValues) {
  EXPECT_EQ(satotate_cdf(0.0), 0.0);
  EXPECT_NEAR(satotate_cdf(std::numbers::pi / 2), 0.5, 1e-16);
  EXPECT_NEAR(satotate_cdf(std::numbers::pi), 1.0, 1e-16);
  EXPECT_THROW(satotate_cdf(-0.1), InvalidInput);
  EXPECT_THROW(satotate_cdf(4.0), InvalidInput);
}

TEST(SatoTate, CdfMonotoneAndMatchesQuadrature) {
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = std::numbers::pi * i / 1000.0;
    const double f = satotate_cdf(t);
    EXPECT_GE(f, prev);
    prev = f;
  }
  // Simpson's rule on the density
  const int n = 2000;
  const double b = 2.0, h = b / n;
  double sum = satotate_density(0) + satotate_density(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4 : 2) * satotate_density(i * h);
  EXPECT_NEAR(sum * h / 3, satotate_cdf(b), 1e-12);
}

TEST(SatoTate, SinglePointReport) {
  const auto r = satotate_test(std::vector<double>{std::numbers::pi / 2}, 2);
  EXPECT_NEAR(r.sup_distance, 0.5, 1e-15);
  EXPECT_EQ(r.histogram[0].count + r.histogram[1].count, 1u);
}

TEST(SatoTate, EmptyBinStillHasModelMass) {
  const auto r = satotate_test(std::vector<double>{0.3, 0.9, 1.2}, 2);
  EXPECT_EQ(r.histogram[1].count, 0u);
  EXPECT_NEAR(r.histogram[1].model_mass, 0.5, 1e-15);
  EXPECT_EQ(r.histogram[0].count, 3u);
}

TEST(SatoTate, Preconditions) {
  EXPECT_THROW(satotate_test(std::vector<double>{1.0}, 1), InvalidInput);
  EXPECT_THROW(satotate_test(std::vector<double>{}, 4), InvalidInput);
}

TEST(SatoTate, HistogramRowsSumToEntries) {
  const auto angles = build_angles(table(), 20000);
  const auto r = satotate_test(angles, 37);
  std::size_t total = 0;
  double mass = 0.0;
  for (const auto& b : r.histogram) {
    total += b.count;
    mass += b.model_mass;
  }
  EXPECT_EQ(total, angles.size());
  EXPECT_NEAR(mass, 1.0, 1e-14);
  EXPECT_LT(r.sup_distance, 0.05);
}

// Samples drawn from the Sato-Tate law itself must land close to the model.
TEST(SatoTate, SyntheticSampleConverges) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> thetas;
  for (int i = 0; i < 50000; ++i) {
    const double target = u(rng);
    double lo = 0, hi = std::numbers::pi;
    for (int k = 0; k < 60; ++k) {
      const double mid = 0.5 * (lo + hi);
      (satotate_cdf(mid) < target ? lo : hi) = mid;
    }
    thetas.push_back(0.5 * (lo + hi));
  }
  EXPECT_LT(satotate_test(thetas, 100).sup_distance, 0.01);
}
