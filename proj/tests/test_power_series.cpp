#include <gtest/gtest.h>

#include <random>

#include "eulerprod/power_series.hpp"

using eulerprod::MultiplyMethod;
using eulerprod::PowerSeriesZ;

namespace {

PowerSeriesZ random_series(std::size_t order, unsigned bits, std::mt19937_64& rng) {
  gmp_randclass r(gmp_randinit_default);
  r.seed(static_cast<unsigned long>(rng()));
  PowerSeriesZ s(order);
  for (std::size_t i = 0; i <= order; ++i) {
    mpz_class v = r.get_z_bits(bits);
    if (rng() & 1) v = -v;
    s[i] = v;
  }
  return s;
}

}  // namespace

TEST(PowerSeries, RejectsZeroOrder) { EXPECT_THROW(PowerSeriesZ(0), eulerprod::InvalidInput); }

TEST(PowerSeries, MismatchedOrdersRejected) {
  PowerSeriesZ a(5), b(6);
  EXPECT_THROW(multiply(a, b), eulerprod::InvalidInput);
}

TEST(PowerSeries, SmallProductByHand) {
  // (1 - q)(1 + q + q^2) = 1 - q^3, truncated at q^2 gives 1
  PowerSeriesZ a(2, {1, -1}), b(2, {1, 1, 1});
  for (auto m : {MultiplyMethod::Schoolbook, MultiplyMethod::MultiModular}) {
    auto c = multiply(a, b, m);
    EXPECT_EQ(c[0], 1);
    EXPECT_EQ(c[1], 0);
    EXPECT_EQ(c[2], 0);
  }
}

// The two multiplication paths must agree exactly, including on coefficients
// far beyond 64 bits and with sign mixtures.
TEST(PowerSeries, SchoolbookMatchesMultiModular) {
  std::mt19937_64 rng(20240611);
  for (unsigned bits : {4u, 40u, 120u}) {
    for (std::size_t order : {1u, 7u, 130u, 600u}) {
      auto a = random_series(order, bits, rng);
      auto b = random_series(order, bits, rng);
      EXPECT_EQ(multiply(a, b, MultiplyMethod::Schoolbook), multiply(a, b, MultiplyMethod::MultiModular))
          << "bits=" << bits << " order=" << order;
      EXPECT_EQ(square(a, MultiplyMethod::Schoolbook), square(a, MultiplyMethod::MultiModular));
      EXPECT_EQ(square(a, MultiplyMethod::Schoolbook), multiply(a, a, MultiplyMethod::Schoolbook));
    }
  }
}

TEST(PowerSeries, SparseOperandsAndZeros) {
  PowerSeriesZ zero(50), a(50);
  a[0] = 3;
  a[49] = -2;
  EXPECT_EQ(multiply(zero, a, MultiplyMethod::MultiModular), zero);
  auto sq = square(a, MultiplyMethod::MultiModular);
  EXPECT_EQ(sq[0], 9);
  EXPECT_EQ(sq[49], -12);
  for (std::size_t i = 1; i < 49; ++i) EXPECT_EQ(sq[i], 0);
}
