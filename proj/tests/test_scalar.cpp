#include <gtest/gtest.h>

#include "support.hpp"

using namespace brpois;
using testing_support::fact;
using testing_support::rising;
using testing_support::Rng;

namespace {

// f = (v0 - v)^{-r} has f^(k) = (r)_k (v0 - v)^{-r-k}, so
// f^(k) f^(l) = alpha f^(k+l+r) forces alpha = (r)_k (r)_l / (r)_{k+l+r}.
Rational alpha_oracle(int r, int k, int l) { return rising(r, k) * rising(r, l) / rising(r, k + l + r); }

// Product of two alpha oracles with the middle factorial cancelled.
Rational beta_oracle(int r, int k, int l, int m) {
  return fact(k + r - 1) * fact(l + r - 1) * fact(m + r - 1) / (fact(k + l + m + 3 * r - 1) * fact(r - 1) * fact(r - 1));
}

}  // namespace

TEST(Rational, LowestTermsAndSign) {
  Rational x(6, -4);
  EXPECT_EQ(x.to_string(), "-3/2");
  EXPECT_EQ(Rational::parse("10/4").to_string(), "5/2");
  EXPECT_EQ(Rational::parse("-7").to_string(), "-7");
  EXPECT_THROW(Rational(1, 0), DivisionByZero);
  EXPECT_THROW(Rational(0).inverse(), DivisionByZero);
}

TEST(Rational, RoundTripAndFieldAxioms) {
  Rng g(7);
  for (int t = 0; t < 200; ++t) {
    Rational a = g.rational(50), b = g.rational(50), c = g.nonzero(50);
    EXPECT_EQ(Rational::parse(a.to_string()), a);
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(a / c * c, a);
    EXPECT_EQ(c * c.inverse(), Rational(1));
  }
}

TEST(Alpha, PaperValues) {
  EXPECT_EQ(alpha_coeff(1, 0, 0), Rational(1));
  EXPECT_EQ(alpha_coeff(1, 1, 1), Rational(1, 6));
  EXPECT_EQ(alpha_coeff(2, 0, 0), Rational(1, 6));
  EXPECT_EQ(alpha_coeff(2, 1, 0), Rational(1, 12));
}

TEST(Alpha, MatchesPoleFactorOracle) {
  for (int r = 1; r <= 4; ++r)
    for (int k = 0; k <= 10; ++k)
      for (int l = 0; l <= 10; ++l) EXPECT_EQ(alpha_coeff(r, k, l), alpha_oracle(r, k, l)) << r << k << l;
}

TEST(Alpha, Symmetric) {
  for (int r = 1; r <= 4; ++r)
    for (int k = 0; k <= 10; ++k)
      for (int l = 0; l <= 10; ++l) EXPECT_EQ(alpha_coeff(r, k, l), alpha_coeff(r, l, k));
}

TEST(Alpha, RejectsBadOrder) {
  EXPECT_THROW(alpha_coeff(0, 1, 1), std::invalid_argument);
  EXPECT_THROW(CoeffSpec(0), std::invalid_argument);
}

TEST(Beta, PaperValues) {
  EXPECT_EQ(beta_coeff(1, 1, 2, 3), Rational(1, 3360));
  EXPECT_EQ(beta_coeff(1, 0, 0, 0), Rational(1, 2));
}

TEST(Beta, OrderTwoAllZeroFromOracle) {
  // 1!1!1!/(5! (1!)^2)
  EXPECT_EQ(beta_oracle(2, 0, 0, 0), Rational(1, 120));
  EXPECT_EQ(beta_coeff(2, 0, 0, 0), beta_oracle(2, 0, 0, 0));
}

TEST(Beta, ClosedFormAndCyclic) {
  for (int r = 1; r <= 4; ++r)
    for (int k = 0; k <= 8; ++k)
      for (int l = 0; l <= 8; ++l)
        for (int m = 0; m <= 8; ++m) {
          Rational b = beta_coeff(r, k, l, m);
          ASSERT_EQ(b, beta_oracle(r, k, l, m));
          ASSERT_EQ(b, beta_coeff(r, l, m, k));
          ASSERT_EQ(b, beta_coeff(r, m, k, l));
        }
}

TEST(Alpha, OrderTwoScalarIdentity) {
  for (int k = 0; k <= 20; ++k)
    EXPECT_EQ(alpha_coeff(2, k, 0) / fact(k), fact(k + 2).inverse() - Rational(2) * fact(k + 3).inverse());
}
