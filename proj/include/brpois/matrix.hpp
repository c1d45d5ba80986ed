#pragma once

/// Dense matrices over an arbitrary coefficient ring plus exact linear algebra
/// over the rationals.
///
/// Entry types must be default-constructible to zero, support +=, and provide
/// a free function is_zero(). Products multiply entries left factor first,
/// so a Matrix over a noncommutative algebra gives the "odot" product.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "brpois/rational.hpp"

namespace brpois {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols) throw DimensionMismatch("matrix data size mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(Rational(1));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<T>& data() const { return data_; }

  bool is_zero_matrix() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return is_zero(x); });
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(r, c) = f((*this)(r, c));
    return out;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  Matrix operator-() const {
    Matrix out(*this);
    for (auto& x : out.data_) x = -x;
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Product with entries multiplied left-then-right; zero entries of the left
/// factor are skipped so sparse Rational operators stay cheap.
template <class A, class B>
auto operator*(const Matrix<A>& a, const Matrix<B>& b) {
  using C = decltype(std::declval<const A&>() * std::declval<const B&>());
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  Matrix<C> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const A& x = a(i, k);
      if (is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const B& y = b(k, j);
        if (is_zero(y)) continue;
        out(i, j) += x * y;
      }
    }
  return out;
}

/// Scales every entry; the scalar multiplies from the left.
template <class T>
Matrix<T> scale(const Rational& s, const Matrix<T>& m) {
  return m.map([&](const T& x) { return T(s * x); });
}

template <class T>
T trace(const Matrix<T>& m) {
  if (!m.is_square()) throw DimensionMismatch("trace of a non-square matrix");
  T out{};
  for (std::size_t i = 0; i < m.rows(); ++i) out += m(i, i);
  return out;
}

/// Kronecker product; the left factor indexes the most significant digits.
template <class A, class B>
auto kron(const Matrix<A>& a, const Matrix<B>& b) {
  using C = decltype(std::declval<const A&>() * std::declval<const B&>());
  Matrix<C> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          if (is_zero(b(k, l))) continue;
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    }
  return out;
}

using QMatrix = Matrix<Rational>;

// ---------------------------------------------------------------------------
// Exact elimination over Q.

namespace detail {

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(QMatrix& m, std::size_t col_limit) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < col_limit && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    Rational inv = m(row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t rank(QMatrix m) { return detail::rref(m, m.cols()).size(); }

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<QMatrix> inverse(const QMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
  std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = detail::rref(aug, n);
  if (piv.size() != n) return std::nullopt;
  QMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

/// Some solution x of A x = b (columns of b solved independently), or nullopt
/// when inconsistent. Free variables are set to zero.
inline std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("solve: row counts differ");
  QMatrix aug(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, a.cols() + j) = b(i, j);
  }
  auto piv = detail::rref(aug, a.cols());
  for (std::size_t r = piv.size(); r < aug.rows(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (!aug(r, a.cols() + j).is_zero()) return std::nullopt;
  QMatrix x(a.cols(), b.cols());
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[r], j) = aug(r, a.cols() + j);
  return x;
}

// ---------------------------------------------------------------------------
// Sparse incremental echelon basis, used for span and membership tests.

using SparseVector = std::map<std::size_t, Rational>;

inline void axpy(SparseVector& y, const Rational& a, const SparseVector& x) {
  for (const auto& [k, v] : x) {
    auto it = y.find(k);
    if (it == y.end()) {
      y.emplace(k, a * v);
    } else {
      it->second += a * v;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

/// Echelon basis of a subspace of Q^N, built one vector at a time. Optionally
/// tracks, for each basis row, its expression in terms of the inserted
/// vectors, so that membership answers come with a certificate.
class SparseBasis {
 public:
  explicit SparseBasis(bool track_certificates = false) : track_(track_certificates) {}

  /// Inserts v; returns true when it enlarged the span.
  bool insert(SparseVector v) {
    SparseVector combo;
    if (track_) combo.emplace(inserted_, Rational(1));
    ++inserted_;
    reduce(v, track_ ? &combo : nullptr);
    if (v.empty()) return false;
    auto lead = v.begin()->first;
    Rational inv = v.begin()->second.inverse();
    for (auto& [k, x] : v) x *= inv;
    if (track_)
      for (auto& [k, x] : combo) x *= inv;
    rows_.emplace(lead, Row{std::move(v), std::move(combo)});
    return true;
  }

  /// Reduces v against the basis. When `combo` is given it accumulates the
  /// inserted-vector combination subtracted from v.
  void reduce(SparseVector& v, SparseVector* combo = nullptr) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      Rational f = -it->second;
      std::size_t key = it->first;
      axpy(v, f, row->second.vec);
      if (combo != nullptr) axpy(*combo, f, row->second.combo);
      it = v.upper_bound(key);
    }
  }

  bool contains(SparseVector v) const {
    reduce(v);
    return v.empty();
  }

  /// Membership with a certificate: coefficients c_i such that
  /// v = sum_i c_i * (i-th inserted vector).
  std::optional<SparseVector> certificate(SparseVector v) const {
    if (!track_) throw std::logic_error("SparseBasis built without certificate tracking");
    SparseVector combo;
    reduce(v, &combo);
    if (!v.empty()) return std::nullopt;
    for (auto& [k, x] : combo) x = -x;
    return combo;
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return inserted_; }

 private:
  struct Row {
    SparseVector vec;
    SparseVector combo;
  };
  bool track_;
  std::size_t inserted_ = 0;
  std::map<std::size_t, Row> rows_;
};

}  // namespace brpois
