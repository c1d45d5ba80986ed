#pragma once

/// Braidings on V (x) V: construction, Yang-Baxter and symmetry analysis,
/// skew-inverse data (Psi, B, C), the R-trace, the extension to V*, and the
/// induced braidings R_W and Q on W = V (x) V* = span(l_i^j).
///
/// W is presented in the generator basis l_i^j, index i*n + j; W (x) W uses
/// the pair index a*n^2 + b. All matrices follow the tensor.hpp convention.

#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "brpois/free_algebra.hpp"
#include "brpois/tensor.hpp"

namespace brpois {

class ValidationFailed : public std::invalid_argument {
 public:
  ValidationFailed(const std::string& what, std::string witness)
      : std::invalid_argument(what + (witness.empty() ? "" : " (witness: " + witness + ")")),
        witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

class NotSkewInvertible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExtensionInconsistent : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NonMonomial : public std::runtime_error {
 public:
  NonMonomial(std::size_t a, std::size_t b)
      : std::runtime_error("R_W is not monomial on basis pair (" + std::to_string(a) + ", " +
                           std::to_string(b) + ")"),
        pair_(a, b) {}
  std::pair<std::size_t, std::size_t> pair() const { return pair_; }

 private:
  std::pair<std::size_t, std::size_t> pair_;
};

enum class SymmetryKind { involutive, hecke, general };

inline std::string to_string(SymmetryKind k) {
  switch (k) {
    case SymmetryKind::involutive: return "involutive";
    case SymmetryKind::hecke: return "hecke";
    case SymmetryKind::general: return "general";
  }
  return "general";
}

struct Classification {
  SymmetryKind kind = SymmetryKind::general;
  /// For Hecke symmetries: R^2 = c R + I with c = q - 1/q.
  std::optional<Rational> q_minus_qinv;
  /// The positive root q when c^2 + 4 is a rational square.
  std::optional<Rational> q;
  /// Set when I, R, R^2 are linearly dependent: R^2 = a R + b I.
  std::optional<std::pair<Rational, Rational>> quadratic;

  std::string describe() const {
    if (kind == SymmetryKind::hecke)
      return "hecke(" + (q ? q->to_string() : "q-1/q=" + q_minus_qinv->to_string()) + ")";
    return to_string(kind);
  }
};

struct AnalyzeReport {
  bool ybe = false;
  Classification classification;
  /// First basis vector of V^{(x)3} on which the two sides of YBE differ.
  std::optional<std::size_t> witness;
  std::string witness_text;
};

namespace detail {

inline std::string basis_name(std::size_t flat, std::size_t dim, std::size_t legs) {
  auto d = multi_index(flat, dim, legs);
  std::string s = "e";
  for (std::size_t k = 0; k < legs; ++k) s += (k ? "(x)e" : "") + std::to_string(d[k] + 1);
  return s;
}

/// First row where two equally sized matrices differ.
inline std::optional<std::size_t> first_differing_row(const QMatrix& a, const QMatrix& b) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(r, c) != b(r, c)) return r;
  return std::nullopt;
}

}  // namespace detail

/// Minimal-polynomial classification of an operator: involutive when
/// R^2 = I, Hecke when R^2 = cR + I with c != 0, general otherwise.
inline Classification classify(const QMatrix& r) {
  Classification out;
  QMatrix sq = r * r;
  QMatrix id = QMatrix::identity(r.rows());
  if (sq == id) {
    out.kind = SymmetryKind::involutive;
    out.quadratic = std::make_pair(Rational(0), Rational(1));
    return out;
  }
  // Solve R^2 = a R + b I in the least-squares-free exact sense.
  QMatrix a(r.rows() * r.cols(), 2), rhs(r.rows() * r.cols(), 1);
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) {
      std::size_t k = i * r.cols() + j;
      a(k, 0) = r(i, j);
      a(k, 1) = id(i, j);
      rhs(k, 0) = sq(i, j);
    }
  auto sol = solve(a, rhs);
  if (!sol) return out;
  Rational ca = (*sol)(0, 0), cb = (*sol)(1, 0);
  out.quadratic = std::make_pair(ca, cb);
  if (cb == Rational(1) && !ca.is_zero()) {
    out.kind = SymmetryKind::hecke;
    out.q_minus_qinv = ca;
    Rational disc = ca * ca + Rational(4), root;
    if (rational_sqrt(disc, root)) out.q = (ca + root) / Rational(2);
  }
  return out;
}

inline AnalyzeReport analyze(const LegOperator& r) {
  if (r.legs() != 2) throw std::invalid_argument("analyze: braiding must act on V (x) V");
  AnalyzeReport rep;
  auto n = r.dim();
  auto r12 = embed_leg(r, 1, 3), r23 = embed_leg(r, 2, 3);
  auto lhs = r12 * r23 * r12, rhs = r23 * r12 * r23;
  rep.witness = detail::first_differing_row(lhs.matrix(), rhs.matrix());
  rep.ybe = !rep.witness.has_value();
  if (rep.witness) rep.witness_text = detail::basis_name(*rep.witness, n, 3);
  rep.classification = classify(r.matrix());
  return rep;
}

/// Skew-inverse data: Tr_2 R_12 Psi_23 = Tr_2 Psi_12 R_23 = P_13,
/// B = Tr_1 Psi, C = Tr_2 Psi.
struct SkewData {
  LegOperator psi;
  QMatrix b_op;
  QMatrix c_op;
};

/// Solves the first defining identity for Psi, then re-verifies both.
inline SkewData skew_inverse(const LegOperator& r) {
  std::size_t n = r.dim(), n2 = n * n, n4 = n2 * n2;
  // (Tr_2 R_12 Psi_23)[(a,c),(d,f)] = sum_{b,y} R[(a,b),(d,y)] Psi[(y,c),(b,f)]
  QMatrix sys(n4, n4), rhs(n4, 1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d)
        for (std::size_t f = 0; f < n; ++f) {
          std::size_t eq = ((a * n + c) * n + d) * n + f;
          if (a == f && c == d) rhs(eq, 0) = 1;
          for (std::size_t b = 0; b < n; ++b)
            for (std::size_t y = 0; y < n; ++y) {
              const Rational& rv = r(a * n + b, d * n + y);
              if (rv.is_zero()) continue;
              std::size_t unknown = (y * n + c) * n2 + (b * n + f);
              sys(eq, unknown) += rv;
            }
        }
  auto sol = solve(sys, rhs);
  if (!sol) throw NotSkewInvertible("no Psi with Tr_2 R_12 Psi_23 = P_13");
  if (rank(sys) != n4) throw NotSkewInvertible("skew-inverse is not unique (singular system)");
  QMatrix psi(n2, n2);
  for (std::size_t u = 0; u < n4; ++u) psi(u / n2, u % n2) = (*sol)(u, 0);
  LegOperator psi_op(n, 2, psi);

  auto first = partial_trace(embed_leg(r, 1, 3) * embed_leg(psi_op, 2, 3), 2);
  auto second = partial_trace(embed_leg(psi_op, 1, 3) * embed_leg(r, 2, 3), 2);
  // P_13 with the middle leg traced out is the flip on the outer legs.
  LegOperator target = flip(n);
  if (!(first == target)) throw NotSkewInvertible("Tr_2 R_12 Psi_23 != P_13 after solve");
  if (!(second == target)) throw NotSkewInvertible("Tr_2 Psi_12 R_23 != P_13");

  SkewData out{psi_op, partial_trace(psi_op, 1).matrix(), partial_trace(psi_op, 2).matrix()};
  if (!inverse(out.b_op)) throw NotSkewInvertible("operator B is not invertible");
  return out;
}

class Braiding {
 public:
  Braiding(LegOperator m, Classification cls)
      : m_(std::move(m)), cls_(std::move(cls)), cache_(std::make_shared<Cache>()) {}

  const LegOperator& matrix() const { return m_; }
  std::size_t dim() const { return m_.dim(); }
  const Classification& classification() const { return cls_; }
  SymmetryKind kind() const { return cls_.kind; }
  bool is_involutive() const { return cls_.kind == SymmetryKind::involutive; }
  bool is_hecke() const { return cls_.kind == SymmetryKind::hecke; }

  const LegOperator& inverse() const {
    std::call_once(cache_->inv_once, [&] {
      auto inv = brpois::inverse(m_.matrix());
      if (!inv) throw ValidationFailed("braiding is not invertible", "");
      cache_->inv = LegOperator(m_.dim(), 2, *inv);
    });
    return *cache_->inv;
  }

  /// Skew-inverse data, computed once.
  const SkewData& skew() const {
    std::call_once(cache_->skew_once, [&] {
      try {
        cache_->skew = skew_inverse(m_);
      } catch (...) {
        cache_->skew_error = std::current_exception();
      }
    });
    if (cache_->skew_error) std::rethrow_exception(cache_->skew_error);
    return *cache_->skew;
  }

 private:
  struct Cache {
    std::once_flag inv_once;
    std::optional<LegOperator> inv;
    std::once_flag skew_once;
    std::optional<SkewData> skew;
    std::exception_ptr skew_error;
  };

  LegOperator m_;
  Classification cls_;
  std::shared_ptr<Cache> cache_;
};

// ---------------------------------------------------------------------------
// Constructors.

inline Braiding validated(LegOperator m, std::optional<SymmetryKind> expected = std::nullopt) {
  auto rep = analyze(m);
  if (!rep.ybe) throw ValidationFailed("operator does not satisfy YBE", rep.witness_text);
  if (!brpois::inverse(m.matrix())) throw ValidationFailed("operator is not invertible", "");
  if (expected && rep.classification.kind != *expected)
    throw ValidationFailed("operator is not a " + to_string(*expected) + " symmetry",
                           "classified as " + rep.classification.describe());
  if (rep.classification.kind == SymmetryKind::hecke) {
    const auto& c = *rep.classification.q_minus_qinv;
    if (c.is_zero()) throw ValidationFailed("Hecke parameter degenerates (q = +-1)", "");
  }
  return {std::move(m), rep.classification};
}

inline Braiding make_flip(std::size_t n) { return validated(flip(n), SymmetryKind::involutive); }

/// R(x_i (x) x_j) = q_ij x_j (x) x_i with q_ij q_ji = 1 and q_ii^2 = 1.
inline Braiding make_diagonal_twist(const QMatrix& factors) {
  if (!factors.is_square()) throw ValidationFailed("twist factors must be square", "");
  std::size_t n = factors.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (factors(i, i) * factors(i, i) != Rational(1))
      throw ValidationFailed("twist factor q_ii must satisfy q_ii^2 = 1",
                             "q_" + std::to_string(i + 1) + std::to_string(i + 1));
    for (std::size_t j = 0; j < n; ++j)
      if (factors(i, j) * factors(j, i) != Rational(1))
        throw ValidationFailed("twist factors must satisfy q_ij q_ji = 1",
                               "q_" + std::to_string(i + 1) + std::to_string(j + 1));
  }
  QMatrix m(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i * n + j, j * n + i) = factors(i, j);
  return validated(LegOperator(n, 2, m), SymmetryKind::involutive);
}

/// Two-parameter-free convenience: n = 2 style twist with q_12 = t, q_21 = 1/t
/// extended to all i < j, diagonal 1.
inline QMatrix uniform_twist_factors(std::size_t n, const Rational& t) {
  QMatrix q(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = i == j ? Rational(1) : (i < j ? t : t.inverse());
  return q;
}

/// The standard Hecke symmetry
///   q sum e_ii (x) e_ii + sum_{i!=j} e_ji (x) e_ij + (q - 1/q) sum_{i<j} e_ii (x) e_jj.
inline Braiding make_dj_hecke(std::size_t n, const Rational& q) {
  if (q == Rational(1) || q == Rational(-1) || q.is_zero())
    throw ValidationFailed("Hecke constructor requires q != 0, +1, -1", "q = " + q.to_string());
  QMatrix m(n * n, n * n);
  Rational c = q - q.inverse();
  for (std::size_t i = 0; i < n; ++i) {
    m(i * n + i, i * n + i) = q;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      // e_ji (x) e_ij has its single entry at row (j,i), column (i,j).
      m(j * n + i, i * n + j) = 1;
      if (i < j) m(i * n + j, i * n + j) = c;
    }
  }
  auto b = validated(LegOperator(n, 2, m), SymmetryKind::hecke);
  if (!b.classification().q || *b.classification().q != q)
    throw ValidationFailed("constructed Hecke symmetry has unexpected parameter",
                           b.classification().describe());
  return b;
}

inline Braiding make_custom(const LegOperator& m) { return validated(m); }

// ---------------------------------------------------------------------------
// R-trace.

/// Tr^R A = Tr(C A) for an n x n matrix A over any coefficient ring.
template <class T>
T r_trace(const QMatrix& c, const Matrix<T>& a) {
  if (c.rows() != a.rows() || !a.is_square() || !c.is_square())
    throw DimensionMismatch("r_trace: dimensions differ");
  return trace(c * a);
}

/// Tr^R over one leg of a multi-leg operator: Tr_leg(C_leg X).
template <class T>
Matrix<T> r_trace_leg(const QMatrix& c, const Matrix<T>& x, std::size_t legs, std::size_t leg) {
  std::size_t n = c.rows();
  return partial_trace(embed_single(c, n, leg, legs) * x, n, legs, leg);
}

// ---------------------------------------------------------------------------
// Extension to the dual space.

/// Blocks of the extended braiding. Each block is an n^2 x n^2 matrix whose
/// row index is the input pair and column index the output pair:
///   vv:     V (x) V   -> V (x) V       (R itself)
///   v_vd:   V (x) V*  -> V* (x) V
///   vd_v:   V* (x) V  -> V (x) V*
///   vd_vd:  V* (x) V* -> V* (x) V*
struct DualExtension {
  std::size_t n = 0;
  QMatrix vv, v_vd, vd_v, vd_vd;
};

namespace detail {

/// Residual of the four pairing-invariance identities; empty when all hold.
inline std::string pairing_invariance_residual(const DualExtension& e) {
  std::size_t n = e.n;
  auto idx = [n](std::size_t a, std::size_t b) { return a * n + b; };
  auto delta = [](std::size_t a, std::size_t b) { return Rational(a == b ? 1 : 0); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t c = 0; c < n; ++c) {
          // U = V, pairing on the left: x_i (x) x^j (x) x_k.
          Rational s1, s2, s3, s4;
          for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
              s1 += e.vv(idx(i, a), idx(c, b)) * e.vd_v(idx(j, k), idx(a, b));
              s2 += e.v_vd(idx(i, a), idx(c, b)) * e.vd_vd(idx(j, k), idx(a, b));
              s3 += e.vv(idx(i, j), idx(a, b)) * e.v_vd(idx(b, k), idx(a, c));
              s4 += e.vd_v(idx(i, j), idx(a, b)) * e.vd_vd(idx(b, k), idx(a, c));
            }
          Rational t12 = delta(i, j) * delta(k, c), t23 = delta(j, k) * delta(i, c);
          std::string at = " at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                           std::to_string(k + 1) + "," + std::to_string(c + 1) + ")";
          if (s1 != t12) return "left invariance, U=V" + at;
          if (s2 != t12) return "left invariance, U=V*" + at;
          if (s3 != t23) return "right invariance, U=V" + at;
          if (s4 != t23) return "right invariance, U=V*" + at;
        }
  return {};
}

}  // namespace detail

/// Solves the pairing-invariance equations for the three unknown blocks and
/// verifies all four identities exactly.
inline DualExtension extend_to_dual(const Braiding& r, const SkewData&) {
  std::size_t n = r.dim(), n2 = n * n;
  const QMatrix& rv = r.matrix().matrix();
  DualExtension e;
  e.n = n;
  e.vv = rv;
  auto idx = [n](std::size_t a, std::size_t b) { return a * n + b; };

  // vd_v from sum_{a,b} R[(i,a),(c,b)] S[(j,k),(a,b)] = d_ij d_kc.
  QMatrix m1(n2, n2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m1(idx(i, c), idx(a, b)) = rv(idx(i, a), idx(c, b));
  auto m1inv = inverse(m1);
  if (!m1inv) throw NotSkewInvertible("dual extension: V*(x)V block is not determined");
  e.vd_v = m1inv->transpose();

  // v_vd from sum_{a,b} R[(i,k),(a,b)] T[(b,l),(a,d)] = d_kl d_id.
  const QMatrix& rinv = r.inverse().matrix();
  e.v_vd = QMatrix(n2, n2);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t d = 0; d < n; ++d)
        for (std::size_t l = 0; l < n; ++l) e.v_vd(idx(b, l), idx(a, d)) = rinv(idx(a, b), idx(d, l));

  // vd_vd from sum_{a,b} S[(i,k),(a,b)] Z[(b,l),(a,d)] = d_kl d_id.
  QMatrix m2(n2, n2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) m2(idx(i, k), idx(b, a)) = e.vd_v(idx(i, k), idx(a, b));
  auto m2inv = inverse(m2);
  if (!m2inv) throw ExtensionInconsistent("dual extension: V*(x)V* block is not determined");
  e.vd_vd = QMatrix(n2, n2);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          e.vd_vd(idx(b, l), idx(a, d)) = (*m2inv)(idx(b, a), idx(d, l));

  auto residual = detail::pairing_invariance_residual(e);
  if (!residual.empty()) throw ExtensionInconsistent("pairing is not R-invariant: " + residual);
  return e;
}

// ---------------------------------------------------------------------------
// Matrix notation helpers: L_1bar (x)odot L_2bar and friends as maps into W (x) W.

/// The generating matrix L with entries the free generators l_i^j (id i*n+j),
/// optionally offset by `label_offset` (used for derivative labels).
inline Matrix<FreeElement> free_generating_matrix(std::size_t n, std::uint32_t label_offset = 0) {
  Matrix<FreeElement> l(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      l(i, j) = FreeElement::generator(label_offset + static_cast<std::uint32_t>(i * n + j));
  return l;
}

/// L_{bar i} on `total` legs: L_1bar = L (x) I, L_{i+1 bar} = R_{i,i+1} L_{bar i} R_{i,i+1}^{-1}.
template <class T>
Matrix<T> bar_embed_matrix(const Matrix<T>& l, std::size_t position, std::size_t total, const Braiding& r) {
  std::size_t n = r.dim();
  if (position < 1 || position > total) throw std::out_of_range("bar_embed: position out of range");
  Matrix<T> out = embed_single(l, n, 1, total);
  for (std::size_t i = 1; i < position; ++i) {
    auto ri = embed_leg(r.matrix().matrix(), n, i, total);
    auto ri_inv = embed_leg(r.inverse().matrix(), n, i, total);
    out = ri * out * ri_inv;
  }
  return out;
}

/// Reads the entries of a matrix of homogeneous degree-k free elements as
/// rows of a (rows*cols) x (W^k) coefficient matrix.
inline QMatrix entry_coefficients(const Matrix<FreeElement>& m, std::size_t w_dim, std::size_t degree) {
  std::size_t cols = ipow(w_dim, degree);
  QMatrix out(m.rows() * m.cols(), cols);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (const auto& [w, coef] : m(r, c).terms()) {
        if (w.size() != degree) throw std::logic_error("entry_coefficients: inhomogeneous entry");
        std::size_t flat = 0;
        for (auto g : w) flat = flat * w_dim + g;
        out(r * m.cols() + c, flat) = coef;
      }
  return out;
}

struct OdotMaps {
  /// Coefficients of the entries of L_1bar (.) L_2bar in W (x) W.
  QMatrix first_second;
  /// Coefficients of the entries of L_2bar (.) L_1bar.
  QMatrix second_first;
  /// Coefficients of R^{-1} (L_1bar (.) L_2bar) R.
  QMatrix conjugated;
};

inline OdotMaps odot_maps(const Braiding& r) {
  std::size_t n = r.dim();
  auto l = free_generating_matrix(n);
  auto l1 = bar_embed_matrix(l, 1, 2, r), l2 = bar_embed_matrix(l, 2, 2, r);
  auto p12 = l1 * l2;
  OdotMaps out;
  out.first_second = entry_coefficients(p12, n * n, 2);
  out.second_first = entry_coefficients(l2 * l1, n * n, 2);
  out.conjugated = entry_coefficients(r.inverse().matrix() * p12 * r.matrix().matrix(), n * n, 2);
  return out;
}

/// R_W = R_23 R_12 R_34 R_23 on W (x) W and Q with Q(L_1bar (.) L_2bar) = R^{-1}(L_1bar (.) L_2bar)R,
/// both in the generator basis.
struct WBraidings {
  QMatrix rw;
  QMatrix q;
};

inline WBraidings rw_and_q(const Braiding& r, const DualExtension& e) {
  std::size_t n = e.n;
  // Legs of W (x) W = V (x) V* (x) V (x) V*; apply first R_23 on V*(x)V,
  // then R_12 on V(x)V and R_34 on V*(x)V*, then R_23 on V(x)V*.
  QMatrix first = embed_leg(e.vd_v, n, 2, 4);
  QMatrix middle = embed_leg(e.vv, n, 1, 4) * embed_leg(e.vd_vd, n, 3, 4);
  QMatrix last = embed_leg(e.v_vd, n, 2, 4);
  WBraidings out;
  out.rw = first * middle * last;
  auto maps = odot_maps(r);
  auto tinv = inverse(maps.first_second);
  if (!tinv) throw std::runtime_error("entries of L_1bar (.) L_2bar do not span W (x) W");
  out.q = *tinv * maps.conjugated;
  return out;
}

/// Color factors of a monomial R_W: R_W(l_a (x) l_b) = eps(a,b) l_b (x) l_a.
class ColorTable {
 public:
  ColorTable() = default;
  ColorTable(std::size_t w_dim, QMatrix eps) : w_dim_(w_dim), eps_(std::move(eps)) {
    if (eps_.rows() != w_dim || eps_.cols() != w_dim) throw DimensionMismatch("color table size");
    for (std::size_t a = 0; a < w_dim; ++a) {
      if (eps_(a, a) != Rational(1))
        throw ValidationFailed("color table violates eps(a,a) = 1", "a = " + std::to_string(a));
      for (std::size_t b = 0; b < w_dim; ++b)
        if (eps_(a, b) * eps_(b, a) != Rational(1))
          throw ValidationFailed("color table violates eps(a,b) eps(b,a) = 1",
                                 "(" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }

  static ColorTable trivial(std::size_t w_dim) {
    QMatrix e(w_dim, w_dim);
    for (std::size_t a = 0; a < w_dim; ++a)
      for (std::size_t b = 0; b < w_dim; ++b) e(a, b) = 1;
    return {w_dim, e};
  }

  std::size_t w_dim() const { return w_dim_; }
  const Rational& operator()(std::size_t a, std::size_t b) const { return eps_(a, b); }
  const QMatrix& table() const { return eps_; }
  bool is_trivial() const {
    for (const auto& x : eps_.data())
      if (x != Rational(1)) return false;
    return true;
  }
  friend bool operator==(const ColorTable& a, const ColorTable& b) {
    return a.w_dim_ == b.w_dim_ && a.eps_ == b.eps_;
  }

 private:
  std::size_t w_dim_ = 0;
  QMatrix eps_;
};

inline ColorTable extract_color_factors(const QMatrix& rw, std::size_t w_dim) {
  if (rw.rows() != w_dim * w_dim) throw DimensionMismatch("R_W size does not match W");
  QMatrix eps(w_dim, w_dim);
  for (std::size_t a = 0; a < w_dim; ++a)
    for (std::size_t b = 0; b < w_dim; ++b) {
      std::size_t row = a * w_dim + b;
      for (std::size_t col = 0; col < rw.cols(); ++col)
        if (col != b * w_dim + a && !rw(row, col).is_zero()) throw NonMonomial(a, b);
      eps(a, b) = rw(row, b * w_dim + a);
      if (eps(a, b).is_zero()) throw NonMonomial(a, b);
    }
  return {w_dim, eps};
}

inline nlohmann::json to_json(const ColorTable& t, std::size_t n) {
  nlohmann::json out = nlohmann::json::object();
  auto name = [n](std::size_t a) { return "l" + std::to_string(a / n + 1) + "^" + std::to_string(a % n + 1); };
  for (std::size_t a = 0; a < t.w_dim(); ++a)
    for (std::size_t b = 0; b < t.w_dim(); ++b) out[name(a) + "," + name(b)] = t(a, b).to_string();
  return out;
}

/// Convenience: the color table induced by a monomial braiding.
inline ColorTable color_table_for(const Braiding& r) {
  auto e = extend_to_dual(r, r.skew());
  auto w = rw_and_q(r, e);
  return extract_color_factors(w.rw, r.dim() * r.dim());
}

}  // namespace brpois
