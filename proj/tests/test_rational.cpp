#include <gtest/gtest.h>

#include <kptau/rational.hpp>

using kptau::Rational;

TEST(Rational, LowestTerms) {
  EXPECT_EQ(Rational(6, 4).str(), "3/2");
  EXPECT_EQ(Rational(4, -2).str(), "-2");
  EXPECT_EQ(Rational(0, 5).str(), "0");
}

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
  EXPECT_THROW(Rational::parse("1.5"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
  EXPECT_THROW(Rational::parse("--1"), std::invalid_argument);
}

TEST(Rational, Arithmetic) {
  Rational a(1, 3), b(-1, 6);
  EXPECT_EQ(a + b, Rational(1, 6));
  EXPECT_EQ(a - b, Rational(1, 2));
  EXPECT_EQ(a * b, Rational(-1, 18));
  EXPECT_EQ(a / b, Rational(-2));
  EXPECT_THROW(a / Rational(0), std::domain_error);
  EXPECT_LT(b, a);
}

TEST(Rational, Combinatorics) {
  EXPECT_EQ(kptau::factorial(6), Rational(720));
  EXPECT_EQ(kptau::binomial(6, 2), Rational(15));
  EXPECT_EQ(kptau::pow(Rational(-2, 3), 3), Rational(-8, 27));
}

TEST(Rational, BigValuesStayExact) {
  Rational f = kptau::factorial(40);
  EXPECT_EQ(f / kptau::factorial(39), Rational(40));
  EXPECT_EQ(f.str(), "815915283247897734345611269596115894272000000000");
}
