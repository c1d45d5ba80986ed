#include <gtest/gtest.h>

#include "support.hpp"

using namespace brpois;
using testing_support::naive_embed;
using testing_support::Rng;

TEST(Flip, Definition) {
  auto p = flip(2).matrix();
  for (std::size_t in = 0; in < 4; ++in)
    for (std::size_t out = 0; out < 4; ++out) {
      std::size_t i = in / 2, j = in % 2;
      EXPECT_EQ(p(in, out), Rational(out == j * 2 + i ? 1 : 0));
    }
  EXPECT_EQ(flip(1).matrix(), QMatrix::identity(1));
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(flip(n) * flip(n), LegOperator::identity(n, 2));
}

TEST(EmbedLeg, AgreesWithDigitOracle) {
  Rng g(3);
  for (std::size_t n = 1; n <= 3; ++n)
    for (int t = 0; t < 3; ++t) {
      LegOperator a(n, 2, g.matrix(n * n, n * n));
      EXPECT_EQ(embed_leg(a, 1, 3).matrix(), naive_embed(a.matrix(), n, 1));
      EXPECT_EQ(embed_leg(a, 2, 3).matrix(), naive_embed(a.matrix(), n, 2));
    }
}

TEST(EmbedLeg, TrivialCases) {
  EXPECT_EQ(embed_leg(flip(2), 1, 2), flip(2));
  auto p13 = embed_leg(flip(3), 1, 3).matrix();
  // e1 (x) e2 (x) e3 -> e2 (x) e1 (x) e3
  std::size_t in = (0 * 3 + 1) * 3 + 2, out = (1 * 3 + 0) * 3 + 2;
  EXPECT_EQ(p13(in, out), Rational(1));
  EXPECT_THROW(embed_leg(flip(2), 3, 3), std::out_of_range);
  EXPECT_THROW(embed_leg(flip(2), 0, 3), std::out_of_range);
}

TEST(EmbedLeg, CompatibleWithComposition) {
  Rng g(11);
  for (int t = 0; t < 4; ++t) {
    LegOperator a(2, 2, g.matrix(4, 4)), b(2, 2, g.matrix(4, 4));
    for (std::size_t p = 1; p <= 3; ++p) EXPECT_EQ(embed_leg(a * b, p, 4), embed_leg(a, p, 4) * embed_leg(b, p, 4));
  }
}

TEST(EmbedLeg, FlipSatisfiesBraidRelation) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto p12 = embed_leg(flip(n), 1, 3), p23 = embed_leg(flip(n), 2, 3);
    EXPECT_EQ(p12 * p23 * p12, p23 * p12 * p23);
  }
}

TEST(PartialTrace, PaperAndTrivialValues) {
  EXPECT_EQ(partial_trace(flip(2), 2), LegOperator::identity(2, 1));
  Rng g(5);
  QMatrix a = g.matrix(3, 3);
  LegOperator ia(3, 2, kron(QMatrix::identity(3), a));
  EXPECT_EQ(partial_trace(ia, 1).matrix(), scale(Rational(3), a));
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(full_trace(flip(n)), Rational(static_cast<long>(n)));
  EXPECT_THROW(partial_trace(flip(2), 3), std::out_of_range);
}

TEST(PartialTrace, OfTensorProductOracle) {
  Rng g(9);
  for (int t = 0; t < 5; ++t) {
    QMatrix a = g.matrix(2, 2), b = g.matrix(2, 2);
    LegOperator ab(2, 2, kron(a, b));
    EXPECT_EQ(partial_trace(ab, 2).matrix(), scale(trace(b), a));
    EXPECT_EQ(partial_trace(ab, 1).matrix(), scale(trace(a), b));
    LegOperator a_i(2, 2, kron(a, QMatrix::identity(2)));
    EXPECT_EQ(partial_trace(a_i, 2).matrix(), scale(Rational(2), a));
  }
}

TEST(PartialTrace, SequentialEqualsFull) {
  Rng g(13);
  LegOperator x(2, 3, g.matrix(8, 8));
  auto once = partial_trace(partial_trace(partial_trace(x, 3), 2), 1);
  EXPECT_EQ(once.matrix()(0, 0), full_trace(x));
}

TEST(LegOperatorJson, RoundTrip) {
  Rng g(17);
  LegOperator x(2, 2, g.matrix(4, 4));
  EXPECT_EQ(leg_operator_from_json(to_json(x)), x);
}
