#pragma once

/// Operators on tensor powers V^{(x)N} with exact entries.
///
/// Basis order: multi-index (i_1, ..., i_N) lexicographic, i_1 most
/// significant, so kron(A, B) acts with A on the first legs. Matrices follow
/// the index convention M[(i_1..i_N), (j_1..j_N)] = M_{i_1..i_N}^{j_1..j_N}:
/// the linear map sends the basis vector e_I to sum_J M[I, J] e_J, so the
/// matrix product A * B is "apply A, then B".

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "brpois/matrix.hpp"

namespace brpois {

inline std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t out = 1;
  while (e-- > 0) out *= base;
  return out;
}

/// Splits a flat basis index into its multi-index digits (most significant first).
inline std::vector<std::size_t> multi_index(std::size_t flat, std::size_t dim, std::size_t legs) {
  std::vector<std::size_t> out(legs);
  for (std::size_t k = legs; k-- > 0;) {
    out[k] = flat % dim;
    flat /= dim;
  }
  return out;
}

inline std::size_t flat_index(const std::vector<std::size_t>& digits, std::size_t dim) {
  std::size_t out = 0;
  for (auto d : digits) out = out * dim + d;
  return out;
}

class LegOperator {
 public:
  LegOperator() = default;
  LegOperator(std::size_t dim, std::size_t legs, QMatrix entries)
      : dim_(dim), legs_(legs), m_(std::move(entries)) {
    if (dim == 0 || legs == 0) throw std::invalid_argument("LegOperator needs dim, legs >= 1");
    auto size = ipow(dim, legs);
    if (m_.rows() != size || m_.cols() != size)
      throw DimensionMismatch("LegOperator entries must be dim^legs square");
  }

  static LegOperator identity(std::size_t dim, std::size_t legs) {
    return {dim, legs, QMatrix::identity(ipow(dim, legs))};
  }

  std::size_t dim() const { return dim_; }
  std::size_t legs() const { return legs_; }
  std::size_t size() const { return m_.rows(); }
  const QMatrix& matrix() const { return m_; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  /// Image of the basis vector e_in as a dense coefficient vector.
  std::vector<Rational> apply_basis(std::size_t in) const {
    std::vector<Rational> out(size());
    for (std::size_t j = 0; j < size(); ++j) out[j] = m_(in, j);
    return out;
  }

  friend LegOperator operator*(const LegOperator& a, const LegOperator& b) {
    a.check_compatible(b);
    return {a.dim_, a.legs_, a.m_ * b.m_};
  }
  friend LegOperator operator+(const LegOperator& a, const LegOperator& b) {
    a.check_compatible(b);
    return {a.dim_, a.legs_, a.m_ + b.m_};
  }
  friend LegOperator operator-(const LegOperator& a, const LegOperator& b) {
    a.check_compatible(b);
    return {a.dim_, a.legs_, a.m_ - b.m_};
  }
  friend LegOperator operator*(const Rational& s, const LegOperator& a) {
    return {a.dim_, a.legs_, scale(s, a.m_)};
  }
  friend bool operator==(const LegOperator& a, const LegOperator& b) {
    return a.dim_ == b.dim_ && a.legs_ == b.legs_ && a.m_ == b.m_;
  }

  void check_compatible(const LegOperator& b) const {
    if (dim_ != b.dim_ || legs_ != b.legs_) throw DimensionMismatch("LegOperator shapes differ");
  }

 private:
  std::size_t dim_ = 0;
  std::size_t legs_ = 0;
  QMatrix m_;
};

inline LegOperator tensor(const LegOperator& a, const LegOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("tensor: leg dimensions differ");
  return {a.dim(), a.legs() + b.legs(), kron(a.matrix(), b.matrix())};
}

/// The flip P(x (x) y) = y (x) x on V (x) V.
inline LegOperator flip(std::size_t n) {
  if (n == 0) throw std::invalid_argument("flip: n must be >= 1");
  QMatrix m(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i * n + j, j * n + i) = 1;
  return {n, 2, m};
}

/// I^{(x)(pos-1)} (x) op (x) I^{(x)(total-pos-1)} for a two-leg op, pos 1-based.
template <class T>
Matrix<T> embed_leg(const Matrix<T>& op, std::size_t dim, std::size_t position, std::size_t total) {
  if (op.rows() != dim * dim || op.cols() != dim * dim)
    throw DimensionMismatch("embed_leg: operator must act on two legs");
  if (position < 1 || position + 1 > total)
    throw std::out_of_range("embed_leg: position out of range");
  Matrix<T> out = kron(QMatrix::identity(ipow(dim, position - 1)), op);
  return kron(out, QMatrix::identity(ipow(dim, total - position - 1)));
}

inline LegOperator embed_leg(const LegOperator& op, std::size_t position, std::size_t total) {
  if (op.legs() != 2) throw std::invalid_argument("embed_leg: operator must have two legs");
  return {op.dim(), total, embed_leg(op.matrix(), op.dim(), position, total)};
}

/// Embeds a one-leg matrix at leg `position` (1-based) of `total` legs.
template <class T>
Matrix<T> embed_single(const Matrix<T>& op, std::size_t dim, std::size_t position, std::size_t total) {
  if (op.rows() != dim || op.cols() != dim) throw DimensionMismatch("embed_single: operator must act on one leg");
  if (position < 1 || position > total) throw std::out_of_range("embed_single: position out of range");
  Matrix<T> out = kron(QMatrix::identity(ipow(dim, position - 1)), op);
  return kron(out, QMatrix::identity(ipow(dim, total - position)));
}

/// Traces out leg `leg` (1-based) of an operator on `legs` legs of dimension dim.
template <class T>
Matrix<T> partial_trace(const Matrix<T>& op, std::size_t dim, std::size_t legs, std::size_t leg) {
  if (leg < 1 || leg > legs) throw std::out_of_range("partial_trace: leg out of range");
  if (op.rows() != ipow(dim, legs) || op.cols() != op.rows())
    throw DimensionMismatch("partial_trace: operator size does not match legs");
  std::size_t outer = ipow(dim, leg - 1), inner = ipow(dim, legs - leg);
  std::size_t out_size = outer * inner;
  Matrix<T> out(out_size, out_size);
  for (std::size_t r = 0; r < out_size; ++r)
    for (std::size_t c = 0; c < out_size; ++c) {
      std::size_t ro = r / inner, ri = r % inner, co = c / inner, ci = c % inner;
      T acc{};
      for (std::size_t a = 0; a < dim; ++a)
        acc += op((ro * dim + a) * inner + ri, (co * dim + a) * inner + ci);
      out(r, c) = acc;
    }
  return out;
}

inline LegOperator partial_trace(const LegOperator& op, std::size_t leg) {
  if (op.legs() == 1) {
    if (leg != 1) throw std::out_of_range("partial_trace: leg out of range");
    // Tracing the last leg leaves a scalar, stored as a 1x1 operator on a 1-dim space.
    QMatrix s(1, 1);
    s(0, 0) = trace(op.matrix());
    return {1, 1, s};
  }
  return {op.dim(), op.legs() - 1, partial_trace(op.matrix(), op.dim(), op.legs(), leg)};
}

/// Sequential partial traces over every leg: the ordinary trace.
inline Rational full_trace(const LegOperator& op) { return trace(op.matrix()); }

// JSON: {"dim": n, "legs": N, "entries": [["p/q", ...], ...]} row-major.

inline nlohmann::json to_json(const QMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Rational rational_from_json(const nlohmann::json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw std::invalid_argument("rational JSON value must be a \"p/q\" string or an integer");
}

inline QMatrix qmatrix_from_json(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty()) throw std::invalid_argument("matrix JSON must be a non-empty array");
  std::size_t nr = rows.size(), nc = rows[0].size();
  QMatrix m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    if (!rows[r].is_array() || rows[r].size() != nc) throw std::invalid_argument("ragged matrix JSON");
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = rational_from_json(rows[r][c]);
  }
  return m;
}

inline nlohmann::json to_json(const LegOperator& op) {
  return {{"dim", op.dim()}, {"legs", op.legs()}, {"entries", to_json(op.matrix())}};
}

inline LegOperator leg_operator_from_json(const nlohmann::json& j) {
  auto dim = j.at("dim").get<std::size_t>();
  auto legs = j.at("legs").get<std::size_t>();
  return {dim, legs, qmatrix_from_json(j.at("entries"))};
}

}  // namespace brpois
