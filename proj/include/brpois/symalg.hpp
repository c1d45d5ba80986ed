#pragma once

/// The graded (color-)commutative polynomial algebra on generators
/// l_i^j^(k)[p], matrices over it and the leg embeddings L_{i bar}.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "brpois/braiding.hpp"
#include "brpois/fnpoly.hpp"
#include "brpois/ratfunc.hpp"

namespace brpois {

class ColorTableMismatch : public std::invalid_argument {
 public:
  ColorTableMismatch() : std::invalid_argument("operands carry different color tables") {}
};

/// Packed generator: site << 24 | order << 16 | row << 8 | col, all 0-based.
/// The packing makes integer order equal to the (site, k, i, j) lex order.
using Gen = std::uint32_t;

inline Gen make_gen(unsigned row, unsigned col, unsigned order = 0, unsigned site = 0) {
  if (row > 255 || col > 255 || order > 255 || site > 255) throw std::out_of_range("generator index out of range");
  return site << 24 | order << 16 | row << 8 | col;
}
inline unsigned gen_site(Gen g) { return g >> 24; }
inline unsigned gen_order(Gen g) { return (g >> 16) & 0xff; }
inline unsigned gen_row(Gen g) { return (g >> 8) & 0xff; }
inline unsigned gen_col(Gen g) { return g & 0xff; }
inline Gen raise_order(Gen g, unsigned by = 1) {
  return make_gen(gen_row(g), gen_col(g), gen_order(g) + by, gen_site(g));
}
/// Index of the generator in W = span(l_i^j).
inline std::size_t gen_w_index(Gen g, std::size_t n) { return gen_row(g) * n + gen_col(g); }

inline std::string gen_name(Gen g) {
  std::string s = (gen_site(g) ? "a" : "l") + std::to_string(gen_row(g) + 1) + "^" + std::to_string(gen_col(g) + 1);
  if (gen_order(g)) s += "^(" + std::to_string(gen_order(g)) + ")";
  if (gen_site(g)) s += "[" + std::to_string(gen_site(g)) + "]";
  return s;
}

using ColorPtr = std::shared_ptr<const ColorTable>;

inline std::size_t color_dim(const ColorTable& t) {
  std::size_t n = 0;
  while (n * n < t.w_dim()) ++n;
  return n;
}

/// eps(a, b) for generators; 1 without a table.
inline Rational gen_color(const ColorPtr& c, Gen a, Gen b) {
  if (!c) return Rational(1);
  std::size_t n = color_dim(*c);
  return (*c)(gen_w_index(a, n), gen_w_index(b, n));
}

inline std::string coeff_string(const Rational& c) { return c.to_string(); }
inline std::string coeff_string(const RationalFunction& c) { return c.to_string(); }
inline std::string coeff_string(const FnPoly& c) { return c.to_string(); }

template <class Coeff>
class AlgebraElement {
 public:
  using Monomial = std::vector<Gen>;
  using Terms = std::map<Monomial, Coeff>;

  AlgebraElement() = default;
  AlgebraElement(const Coeff& c) {  // NOLINT: constants embed
    if (!brpois::is_zero(c)) t_[{}] = c;
  }
  AlgebraElement(const Rational& c) requires(!std::is_same_v<Coeff, Rational>)  // NOLINT
      : AlgebraElement(Coeff(c)) {}
  AlgebraElement(int c) : AlgebraElement(Coeff(Rational(c))) {}  // NOLINT

  static AlgebraElement generator(Gen g, ColorPtr color = nullptr, const Coeff& c = Coeff(Rational(1))) {
    AlgebraElement e;
    e.color_ = std::move(color);
    if (!brpois::is_zero(c)) e.t_[{g}] = c;
    return e;
  }

  /// The ordered product w_1 w_2 ... brought to normal form.
  static AlgebraElement from_word(const Monomial& w, ColorPtr color = nullptr, const Coeff& c = Coeff(Rational(1))) {
    AlgebraElement e;
    e.color_ = std::move(color);
    Rational f(1);
    if (e.color_)
      for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
          if (w[i] > w[j]) f *= gen_color(e.color_, w[i], w[j]);
    Monomial m = w;
    std::sort(m.begin(), m.end());
    e.add(m, Coeff(f) * c);
    return e;
  }

  const Terms& terms() const { return t_; }
  const ColorPtr& color() const { return color_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, m.size());
    return d;
  }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }
  Coeff coefficient(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Coeff() : it->second;
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    adopt_color(o);
    for (const auto& [m, c] : o.t_) add(m, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    adopt_color(o);
    for (const auto& [m, c] : o.t_) add(m, -c);
    return *this;
  }
  AlgebraElement operator-() const {
    AlgebraElement r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }

  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement r;
    r.color_ = merged_color(a, b);
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) {
        Rational f(1);
        Monomial m = merge(ma, mb, r.color_, f);
        r.add(m, f.is_one() ? ca * cb : ca * cb * Coeff(f));
      }
    return r;
  }
  AlgebraElement& operator*=(const AlgebraElement& o) { return *this = *this * o; }

  friend AlgebraElement operator*(const Coeff& s, const AlgebraElement& a) {
    AlgebraElement r;
    r.color_ = a.color_;
    if (brpois::is_zero(s)) return r;
    for (const auto& [m, c] : a.t_) r.add(m, s * c);
    return r;
  }
  friend AlgebraElement operator*(const AlgebraElement& a, const Coeff& s) { return s * a; }
  friend AlgebraElement operator*(const Rational& s, const AlgebraElement& a) requires(!std::is_same_v<Coeff, Rational>) {
    return Coeff(s) * a;
  }
  friend AlgebraElement operator*(const AlgebraElement& a, const Rational& s) requires(!std::is_same_v<Coeff, Rational>) {
    return Coeff(s) * a;
  }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.t_ == b.t_; }

  /// Leibniz derivative in v: raises the order of one factor at a time.
  AlgebraElement d_dv() const {
    AlgebraElement r;
    r.color_ = color_;
    for (const auto& [m, c] : t_)
      for (std::size_t i = 0; i < m.size(); ++i) {
        Monomial w = m;
        w[i] = raise_order(w[i]);
        r += from_word(w, color_, c);
      }
    return r;
  }

  template <class F>
  auto map_coefficients(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const Coeff&>()))>;
    AlgebraElement<D> r = AlgebraElement<D>::with_color(color_);
    for (const auto& [m, c] : t_) r += AlgebraElement<D>::from_word(m, color_, f(c));
    return r;
  }

  static AlgebraElement with_color(ColorPtr c) {
    AlgebraElement e;
    e.color_ = std::move(c);
    return e;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : t_) {
      std::string mono;
      for (auto g : m) mono += (mono.empty() ? "" : "*") + gen_name(g);
      append_term(out, coeff_string(c), mono);
    }
    return out;
  }

 private:
  static ColorPtr merged_color(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.color_ && b.color_) {
      if (a.color_ != b.color_ && !(*a.color_ == *b.color_)) throw ColorTableMismatch();
      return a.color_;
    }
    if (a.color_) {
      if (!b.is_constant()) throw ColorTableMismatch();
      return a.color_;
    }
    if (b.color_) {
      if (!a.is_constant()) throw ColorTableMismatch();
      return b.color_;
    }
    return nullptr;
  }
  void adopt_color(const AlgebraElement& o) {
    color_ = merged_color(*this, o);
  }

  /// Sorted merge; every generator of `b` that jumps over a larger generator
  /// of `a` contributes eps(a_i, b_j).
  static Monomial merge(const Monomial& a, const Monomial& b, const ColorPtr& color, Rational& f) {
    Monomial m;
    m.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
        m.push_back(a[i++]);
      } else {
        if (color)
          for (std::size_t k = i; k < a.size(); ++k)
            if (a[k] != b[j]) f *= gen_color(color, a[k], b[j]);
        m.push_back(b[j++]);
      }
    }
    return m;
  }

  void add(const Monomial& m, const Coeff& c) {
    if (brpois::is_zero(c)) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (brpois::is_zero(it->second)) t_.erase(it);
    }
  }

  template <class>
  friend class AlgebraElement;

  Terms t_;
  ColorPtr color_;
};

template <class Coeff>
bool is_zero(const AlgebraElement<Coeff>& e) {
  return e.is_zero();
}

using QElement = AlgebraElement<Rational>;

template <class Coeff>
using MatrixOverAlgebra = Matrix<AlgebraElement<Coeff>>;

/// The matrix of generators l_i^j^(order)[site].
template <class Coeff = Rational>
MatrixOverAlgebra<Coeff> generator_matrix(std::size_t n, unsigned order = 0, unsigned site = 0,
                                          ColorPtr color = nullptr) {
  MatrixOverAlgebra<Coeff> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = AlgebraElement<Coeff>::generator(make_gen(static_cast<unsigned>(i), static_cast<unsigned>(j), order, site), color);
  return m;
}

/// Matrix product with entries multiplied A-then-B in the algebra.
template <class Coeff>
MatrixOverAlgebra<Coeff> mat_odot(const MatrixOverAlgebra<Coeff>& a, const MatrixOverAlgebra<Coeff>& b) {
  return a * b;
}

template <class Coeff>
MatrixOverAlgebra<Coeff> mat_power(const MatrixOverAlgebra<Coeff>& a, unsigned k) {
  auto out = MatrixOverAlgebra<Coeff>::identity(a.rows());
  for (unsigned i = 0; i < k; ++i) out = out * a;
  return out;
}

template <class Coeff>
MatrixOverAlgebra<Coeff> d_dv(const MatrixOverAlgebra<Coeff>& a) {
  return a.map([](const AlgebraElement<Coeff>& e) { return e.d_dv(); });
}

/// L_{position bar} on `total` legs; for involutive R the inverse equals R.
template <class Coeff>
MatrixOverAlgebra<Coeff> bar_embed(const MatrixOverAlgebra<Coeff>& l, std::size_t position, std::size_t total,
                                   const Braiding& r) {
  return bar_embed_matrix(l, position, total, r);
}

inline ColorPtr share(ColorTable t) { return std::make_shared<const ColorTable>(std::move(t)); }

inline nlohmann::json to_json(const QElement& e) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : e.terms()) out.push_back({{"monomial", m}, {"coeff", c.to_string()}});
  return out;
}

}  // namespace brpois
