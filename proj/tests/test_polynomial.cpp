#include <gtest/gtest.h>

#include "eulerprod/polynomial.hpp"

using namespace eulerprod;

TEST(Polynomial, ParseForms) {
  EXPECT_EQ(parse_polynomial("x^3-3x"), (IntPolynomial{0, -3, 0, 1}));
  EXPECT_EQ(parse_polynomial("x^2 - 2"), (IntPolynomial{-2, 0, 1}));
  EXPECT_EQ(parse_polynomial("-2*x^2+5"), (IntPolynomial{5, 0, -2}));
  EXPECT_EQ(parse_polynomial("x-5"), (IntPolynomial{-5, 1}));
  EXPECT_EQ(parse_polynomial("x"), (IntPolynomial{0, 1}));
  EXPECT_EQ(parse_polynomial("7"), (IntPolynomial{7}));
  EXPECT_EQ(parse_polynomial("x^2+x^2"), (IntPolynomial{0, 0, 2}));
  EXPECT_EQ(parse_polynomial("X^4-4X^2+2"), (IntPolynomial{2, 0, -4, 0, 1}));
  EXPECT_EQ(parse_polynomial("123456789012345678901234567890x"),
            IntPolynomial({0, mpz_class("123456789012345678901234567890")}));
}

TEST(Polynomial, ParseErrors) {
  for (const char* bad : {"", "x^", "2x3", "x**2", "(x+1)", "x^2 2", "*x", "y"})
    EXPECT_THROW(parse_polynomial(bad), InvalidInput) << bad;
}

TEST(Polynomial, FormatRoundTrip) {
  for (const char* s : {"x^3-3x", "x^2-2", "x-5", "x", "-x^4+2x-1", "0", "12"})
    EXPECT_EQ(parse_polynomial(s).to_string(), s);
}

TEST(Polynomial, Arithmetic) {
  const IntPolynomial a{1, 1}, b{-1, 1};
  EXPECT_EQ(a * b, (IntPolynomial{-1, 0, 1}));
  EXPECT_EQ(a - a, IntPolynomial{});
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(parse_polynomial("x^2-2").eval(mpq_class(3, 2)), mpq_class(1, 4));
  EXPECT_DOUBLE_EQ(parse_polynomial("x^3-3x").eval(1.5), 3.375 - 4.5);
  EXPECT_TRUE(parse_polynomial("x^2-1").is_monic());
  EXPECT_FALSE(parse_polynomial("2x^2-1").is_monic());
}
