#include <gtest/gtest.h>

#include "support.hpp"

using namespace brpois;
using testing_support::naive_embed;
using testing_support::naive_mul;
using testing_support::Rng;

namespace {

QMatrix twist3() {
  QMatrix f(3, 3);
  Rational v[3][3] = {{1, 2, Rational(1, 4)}, {Rational(1, 2), 1, 3}, {4, Rational(1, 3), 1}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) f(i, j) = v[i][j];
  return f;
}

std::vector<Braiding> involutive_presets() {
  QMatrix signs = uniform_twist_factors(2, Rational(3));
  signs(0, 0) = -1;
  return {make_flip(2), make_flip(3), make_diagonal_twist(uniform_twist_factors(2, Rational(2))),
          make_diagonal_twist(twist3()), make_diagonal_twist(signs)};
}

std::vector<Braiding> all_presets() {
  auto out = involutive_presets();
  out.push_back(make_dj_hecke(2, Rational(2)));
  out.push_back(make_dj_hecke(3, Rational(2)));
  out.push_back(make_dj_hecke(2, Rational(3)));
  return out;
}

bool naive_ybe(const QMatrix& r, std::size_t n) {
  auto a = naive_embed(r, n, 1), b = naive_embed(r, n, 2);
  return naive_mul(naive_mul(a, b), a) == naive_mul(naive_mul(b, a), b);
}

// Tr_2 over the middle leg of a three-leg operator by explicit digit sums.
QMatrix naive_trace_middle(const QMatrix& x, std::size_t n) {
  QMatrix out(n * n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d)
        for (std::size_t f = 0; f < n; ++f) {
          Rational acc;
          for (std::size_t m = 0; m < n; ++m) acc += x((a * n + m) * n + c, (d * n + m) * n + f);
          out(a * n + c, d * n + f) = acc;
        }
  return out;
}

// Colour factor of l_i^j past l_k^l for a diagonal twist, obtained by moving
// x_k past x^j and x_i, then x^l past x^j and x_i:
//   eps = q_ik q_jl / (q_jk q_il).
Rational twist_color(const QMatrix& q, std::size_t a, std::size_t b, std::size_t n) {
  std::size_t i = a / n, j = a % n, k = b / n, l = b % n;
  return q(i, k) * q(j, l) / (q(j, k) * q(i, l));
}

}  // namespace

TEST(Presets, YbeByDigitOracleAndKinds) {
  for (const auto& b : involutive_presets()) {
    EXPECT_TRUE(naive_ybe(b.matrix().matrix(), b.dim()));
    EXPECT_TRUE(b.is_involutive());
    EXPECT_EQ(b.matrix() * b.matrix(), LegOperator::identity(b.dim(), 2));
  }
  for (std::size_t n : {2u, 3u}) {
    auto h = make_dj_hecke(n, Rational(2));
    EXPECT_TRUE(naive_ybe(h.matrix().matrix(), n));
    ASSERT_TRUE(h.is_hecke());
    EXPECT_EQ(*h.classification().q, Rational(2));
    QMatrix r = h.matrix().matrix(), id = QMatrix::identity(n * n);
    EXPECT_TRUE((naive_mul(r - scale(Rational(2), id), r + scale(Rational(1, 2), id))).is_zero_matrix());
  }
}

TEST(Presets, TwistAction) {
  auto b = make_diagonal_twist(uniform_twist_factors(2, Rational(2)));
  // R(x1 (x) x2) = 2 x2 (x) x1
  EXPECT_EQ(b.matrix()(0 * 2 + 1, 1 * 2 + 0), Rational(2));
  EXPECT_EQ(b.matrix()(1 * 2 + 0, 0 * 2 + 1), Rational(1, 2));
}

TEST(Presets, RejectsBadInput) {
  QMatrix bad = uniform_twist_factors(2, Rational(2));
  bad(1, 0) = 1;
  EXPECT_THROW(make_diagonal_twist(bad), ValidationFailed);
  QMatrix diag = uniform_twist_factors(2, Rational(2));
  diag(0, 0) = 2;
  EXPECT_THROW(make_diagonal_twist(diag), ValidationFailed);
  EXPECT_THROW(make_dj_hecke(2, Rational(1)), ValidationFailed);
  EXPECT_THROW(make_dj_hecke(2, Rational(-1)), ValidationFailed);
}

TEST(Analyze, RandomMatrixFailsWithWitness) {
  Rng g(21);
  LegOperator x(2, 2, g.matrix(4, 4));
  ASSERT_FALSE(naive_ybe(x.matrix(), 2));
  auto rep = analyze(x);
  EXPECT_FALSE(rep.ybe);
  EXPECT_TRUE(rep.witness.has_value());
  EXPECT_FALSE(rep.witness_text.empty());
  EXPECT_THROW(make_custom(x), ValidationFailed);
}

TEST(Analyze, Classification) {
  EXPECT_EQ(analyze(flip(2)).classification.kind, SymmetryKind::involutive);
  auto rep = analyze(make_dj_hecke(2, Rational(2)).matrix());
  EXPECT_TRUE(rep.ybe);
  EXPECT_EQ(rep.classification.kind, SymmetryKind::hecke);
  EXPECT_EQ(*rep.classification.q, Rational(2));
}

TEST(SkewInverse, DefiningIdentitiesByOracle) {
  for (const auto& b : all_presets()) {
    std::size_t n = b.dim();
    const auto& s = b.skew();
    QMatrix r = b.matrix().matrix(), psi = s.psi.matrix();
    QMatrix p = flip(n).matrix();
    EXPECT_EQ(naive_trace_middle(naive_mul(naive_embed(r, n, 1), naive_embed(psi, n, 2)), n), p);
    EXPECT_EQ(naive_trace_middle(naive_mul(naive_embed(psi, n, 1), naive_embed(r, n, 2)), n), p);
    EXPECT_TRUE(inverse(s.b_op).has_value());
  }
}

TEST(SkewInverse, FlipIsOwnSkewInverse) {
  auto s = make_flip(3).skew();
  EXPECT_EQ(s.psi, flip(3));
  EXPECT_EQ(s.b_op, QMatrix::identity(3));
  EXPECT_EQ(s.c_op, QMatrix::identity(3));
}

TEST(SkewInverse, TwistHasInverseFactors) {
  QMatrix q = twist3();
  auto s = make_diagonal_twist(q).skew();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t c = 0; c < 9; ++c)
        EXPECT_EQ(s.psi(i * 3 + j, c), c == j * 3 + i ? q(i, j).inverse() : Rational(0));
}

TEST(SkewInverse, HeckeRegressionValues) {
  auto s = make_dj_hecke(2, Rational(2)).skew();
  QMatrix b(2, 2), c(2, 2);
  b(0, 0) = Rational(1, 2);
  b(1, 1) = Rational(1, 8);
  c(0, 0) = Rational(1, 8);
  c(1, 1) = Rational(1, 2);
  EXPECT_EQ(s.b_op, b);
  EXPECT_EQ(s.c_op, c);
  EXPECT_NE(trace(s.c_op), Rational(0));
  QMatrix c3(3, 3);
  c3(0, 0) = Rational(1, 243);
  c3(1, 1) = Rational(1, 27);
  c3(2, 2) = Rational(1, 3);
  EXPECT_EQ(make_dj_hecke(3, Rational(3)).skew().c_op, c3);
}

TEST(SkewInverse, SingularSystemRejected) {
  // Invertible and YBE (a scalar multiple of the identity) but not skew-invertible.
  LegOperator id(2, 2, QMatrix::identity(4));
  EXPECT_THROW(skew_inverse(id), NotSkewInvertible);
}

TEST(RTrace, IdentityAndPartialLemma) {
  Rng g(4);
  QMatrix a = g.matrix(3, 3);
  EXPECT_EQ(r_trace(QMatrix::identity(3), a), trace(a));
  EXPECT_THROW(r_trace(QMatrix::identity(2), a), DimensionMismatch);
  for (const auto& b : all_presets())
    EXPECT_EQ(r_trace_leg(b.skew().c_op, b.matrix().matrix(), 2, 2), QMatrix::identity(b.dim()));
}

TEST(RTrace, ConjugationInvariance) {
  Rng g(1234);
  for (const auto& b : all_presets()) {
    std::size_t n = b.dim();
    QMatrix cc = kron(b.skew().c_op, b.skew().c_op), r = b.matrix().matrix(), ri = b.inverse().matrix();
    for (int t = 0; t < 5; ++t) {
      QMatrix x = g.matrix(n * n, n * n);
      EXPECT_EQ(trace(naive_mul(cc, naive_mul(naive_mul(r, x), ri))), trace(naive_mul(cc, x)));
    }
  }
}

TEST(DualExtension, FlipBlocksAreFlips) {
  auto b = make_flip(2);
  auto e = extend_to_dual(b, b.skew());
  QMatrix p = flip(2).matrix();
  EXPECT_EQ(e.vv, p);
  EXPECT_EQ(e.v_vd, p);
  EXPECT_EQ(e.vd_v, p);
  EXPECT_EQ(e.vd_vd, p);
}

TEST(DualExtension, InvarianceForAllPresets) {
  for (const auto& b : all_presets()) {
    auto e = extend_to_dual(b, b.skew());
    EXPECT_EQ(detail::pairing_invariance_residual(e), "");
  }
}

TEST(WBraidings, InvolutiveCoincide) {
  for (const auto& b : involutive_presets()) {
    auto w = rw_and_q(b, extend_to_dual(b, b.skew()));
    std::size_t w2 = b.dim() * b.dim() * b.dim() * b.dim();
    EXPECT_EQ(w.rw, w.q);
    EXPECT_EQ(naive_mul(w.rw, w.rw), QMatrix::identity(w2));
    EXPECT_EQ(naive_mul(w.q, w.q), QMatrix::identity(w2));
  }
  auto f = make_flip(2);
  EXPECT_EQ(rw_and_q(f, extend_to_dual(f, f.skew())).rw, flip(4).matrix());
}

TEST(WBraidings, HeckeIsNotASymmetry) {
  auto b = make_dj_hecke(2, Rational(2));
  auto w = rw_and_q(b, extend_to_dual(b, b.skew()));
  EXPECT_NE(w.rw, w.q);
  EXPECT_TRUE(naive_ybe(w.rw, 4));
  EXPECT_EQ(classify(w.rw).kind, SymmetryKind::general);
  EXPECT_FALSE(classify(w.rw).quadratic.has_value());
}

TEST(Colors, MatchTwistOracle) {
  QMatrix q3 = twist3();
  QMatrix signs = uniform_twist_factors(2, Rational(3));
  signs(0, 0) = -1;
  for (const QMatrix& q : {uniform_twist_factors(2, Rational(2)), q3}) {
    std::size_t n = q.rows();
    auto t = color_table_for(make_diagonal_twist(q));
    for (std::size_t a = 0; a < n * n; ++a)
      for (std::size_t b = 0; b < n * n; ++b) EXPECT_EQ(t(a, b), twist_color(q, a, b, n));
  }
  // For n = 2 the four factors cancel for every pair.
  EXPECT_TRUE(color_table_for(make_diagonal_twist(uniform_twist_factors(2, Rational(2)))).is_trivial());
  EXPECT_FALSE(color_table_for(make_diagonal_twist(q3)).is_trivial());
  // q_11 = -1 makes eps(l1^2, l1^2) = -1, which no colour table may carry.
  ASSERT_EQ(twist_color(signs, 1, 1, 2), Rational(-1));
  EXPECT_THROW(color_table_for(make_diagonal_twist(signs)), ValidationFailed);
  EXPECT_TRUE(color_table_for(make_flip(3)).is_trivial());
}

TEST(Colors, HeckeIsNonMonomial) {
  EXPECT_THROW(color_table_for(make_dj_hecke(2, Rational(2))), NonMonomial);
}

TEST(Colors, JsonExport) {
  auto j = to_json(color_table_for(make_diagonal_twist(twist3())), 3);
  EXPECT_EQ(j.size(), 81u);
  EXPECT_EQ(j.at("l1^1,l1^1"), "1");
}
