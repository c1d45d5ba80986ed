#pragma once

/// Poisson brackets on the generator algebra: linear generator brackets
/// (local Gaudin families, Lie-Poisson, sites, braided variants), their
/// (color) Leibniz extension, and the local verification routines.

#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "brpois/coefficients.hpp"
#include "brpois/report.hpp"
#include "brpois/symalg.hpp"

namespace brpois {

class UnsupportedKind : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Linear map W (x) W -> W: rows a*n^2 + b, columns c, so that
/// {l_a, l_b} = sum_c s(a*n^2+b, c) l_c.
struct StructureTensor {
  std::size_t n = 0;
  QMatrix s;

  const Rational& operator()(std::size_t a, std::size_t b, std::size_t c) const { return s(a * n * n + b, c); }
};

/// gl(n): {l_i^j, l_k^l} = l_i^l d_kj - l_k^j d_il.
inline StructureTensor gl_structure(std::size_t n) {
  std::size_t w = n * n;
  StructureTensor t{n, QMatrix(w * w, w)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          std::size_t row = (i * n + j) * w + (k * n + l);
          if (k == j) t.s(row, i * n + l) += 1;
          if (i == l) t.s(row, k * n + j) -= 1;
        }
  return t;
}

/// The frame relating entries of L_1bar (.) L_2bar to the pair basis of W (x) W.
struct BraidedFrame {
  std::size_t n = 0;
  QMatrix t;      // entry index -> pair coefficients
  QMatrix t_inv;  // pair index -> entry coefficients
};

inline BraidedFrame braided_frame(const Braiding& r) {
  auto maps = odot_maps(r);
  auto inv = inverse(maps.first_second);
  if (!inv) throw std::runtime_error("entries of L_1bar (.) L_2bar do not span W (x) W");
  return {r.dim(), maps.first_second, *inv};
}

/// Structure constants read off from {L_1bar, L_2bar} = L_1bar R^{-1} - R^{-1} L_1bar.
inline StructureTensor defi_structure(const Braiding& r) {
  std::size_t n = r.dim();
  auto l1 = bar_embed_matrix(free_generating_matrix(n), 1, 2, r);
  const QMatrix& rinv = r.inverse().matrix();
  auto rhs = entry_coefficients(l1 * rinv - rinv * l1, n * n, 1);
  auto frame = braided_frame(r);
  return {n, frame.t_inv * rhs};
}

/// A bracket that is linear on generators:
///   {g_a^(k)[p], g_b^(l)[q]} = sign * scale(p) * table(k, l) * sum_c S_ab^c g_c^(k+l+shift)[p]
/// In site mode brackets between different sites vanish and scale(p) is the
/// per-site factor (zero for the constant site); otherwise scale = 1.
class LinearBracket {
 public:
  LinearBracket(StructureTensor s, CoefficientTable table, unsigned shift, ColorPtr color = nullptr)
      : s_(std::move(s)), table_(std::move(table)), shift_(shift), color_(std::move(color)),
        cache_(std::make_shared<Cache>()) {}

  static LinearBracket sites(StructureTensor s, std::vector<Rational> site_scale, ColorPtr color = nullptr) {
    LinearBracket b(std::move(s), unit_table(), 0, std::move(color));
    b.site_scale_ = std::move(site_scale);
    b.site_mode_ = true;
    return b;
  }

  std::size_t n() const { return s_.n; }
  const ColorPtr& color() const { return color_; }
  const StructureTensor& structure() const { return s_; }
  const CoefficientTable& table() const { return table_; }
  unsigned shift() const { return shift_; }
  bool site_mode() const { return site_mode_; }
  const std::vector<Rational>& site_scale() const { return site_scale_; }

  LinearBracket negated() const {
    LinearBracket b = *this;
    b.sign_ = -b.sign_;
    b.cache_ = std::make_shared<Cache>();
    return b;
  }
  LinearBracket with_table(CoefficientTable t) const {
    LinearBracket b = *this;
    b.table_ = std::move(t);
    b.cache_ = std::make_shared<Cache>();
    return b;
  }

  QElement operator()(Gen a, Gen b) const {
    {
      std::lock_guard lock(cache_->m);
      auto it = cache_->gen.find({a, b});
      if (it != cache_->gen.end()) return it->second;
    }
    QElement out = compute(a, b);
    std::lock_guard lock(cache_->m);
    cache_->gen.emplace(std::make_pair(a, b), out);
    return out;
  }

  /// {x, y_1 ... y_q} for a generator x and a normal-form monomial y.
  QElement with_monomial(Gen x, const QElement::Monomial& y) const {
    {
      std::lock_guard lock(cache_->m);
      auto it = cache_->mono.find({x, y});
      if (it != cache_->mono.end()) return it->second;
    }
    QElement out = QElement::with_color(color_);
    Rational passed(1);
    for (std::size_t j = 0; j < y.size(); ++j) {
      QElement::Monomial before(y.begin(), y.begin() + static_cast<long>(j));
      QElement::Monomial after(y.begin() + static_cast<long>(j) + 1, y.end());
      QElement piece = (*this)(x, y[j]);
      if (!piece.is_zero())
        out += passed * (QElement::from_word(before, color_) * piece * QElement::from_word(after, color_));
      passed *= gen_color(color_, x, y[j]);
    }
    std::lock_guard lock(cache_->m);
    cache_->mono.emplace(std::make_pair(x, y), out);
    return out;
  }

  /// {X, Y} for normal-form monomials X, Y:
  ///   sum_i eps(x_{i+1..p}, Y) x_1..x_{i-1} {x_i, Y} x_{i+1..p}.
  QElement monomials(const QElement::Monomial& x, const QElement::Monomial& y) const {
    QElement out = QElement::with_color(color_);
    for (std::size_t i = 0; i < x.size(); ++i) {
      Rational f(1);
      if (color_)
        for (std::size_t t = i + 1; t < x.size(); ++t)
          for (auto g : y) f *= gen_color(color_, x[t], g);
      QElement inner = with_monomial(x[i], y);
      if (inner.is_zero()) continue;
      QElement::Monomial before(x.begin(), x.begin() + static_cast<long>(i));
      QElement::Monomial after(x.begin() + static_cast<long>(i) + 1, x.end());
      out += f * (QElement::from_word(before, color_) * inner * QElement::from_word(after, color_));
    }
    return out;
  }

 private:
  QElement compute(Gen a, Gen b) const {
    QElement out = QElement::with_color(color_);
    unsigned site = gen_site(a);
    Rational scale(1);
    if (site_mode_) {
      if (gen_site(b) != site) return out;
      if (site >= site_scale_.size()) throw std::out_of_range("site without a bracket scale");
      scale = site_scale_[site];
    }
    if (scale.is_zero()) return out;
    Rational c = table_(static_cast<int>(gen_order(a)), static_cast<int>(gen_order(b)));
    if (c.is_zero()) return out;
    c *= scale * Rational(sign_);
    std::size_t n = s_.n, w = n * n;
    std::size_t row = gen_w_index(a, n) * w + gen_w_index(b, n);
    unsigned order = gen_order(a) + gen_order(b) + shift_;
    for (std::size_t k = 0; k < w; ++k) {
      const Rational& v = s_.s(row, k);
      if (v.is_zero()) continue;
      out += QElement::generator(make_gen(static_cast<unsigned>(k / n), static_cast<unsigned>(k % n), order, site),
                                 color_, c * v);
    }
    return out;
  }

  struct Cache {
    std::mutex m;
    std::map<std::pair<Gen, Gen>, QElement> gen;
    std::map<std::pair<Gen, QElement::Monomial>, QElement> mono;
  };

  StructureTensor s_;
  CoefficientTable table_;
  unsigned shift_ = 0;
  ColorPtr color_;
  std::vector<Rational> site_scale_;
  bool site_mode_ = false;
  int sign_ = 1;
  std::shared_ptr<Cache> cache_;
};

/// Classical local family of order r (r = 1: the Gaudin family).
inline LinearBracket local_gaudin(std::size_t n, int r) { return {gl_structure(n), alpha_table(r), static_cast<unsigned>(r)}; }

/// The Lie-Poisson bracket of the current algebra, with labels extended as
/// {L^(k)_1, L^(l)_2} = [L^(k+l)_1, P].
inline LinearBracket lie_poisson_current(std::size_t n) { return {gl_structure(n), unit_table(), 0}; }

/// Braided local family of order r for an involutive monomial braiding.
inline LinearBracket braided_local(const Braiding& r, int order, ColorPtr color) {
  if (!r.is_involutive()) throw UnsupportedKind("braided brackets need an involutive braiding");
  return {defi_structure(r), alpha_table(order), static_cast<unsigned>(order), std::move(color)};
}

/// Site brackets: gl(n) (or the braided gl(R)) on sites 1..N with factor hbar,
/// and the bracket-zero constant site 0.
inline LinearBracket lie_poisson_sites(std::size_t n, std::size_t sites, const Rational& hbar = 1) {
  std::vector<Rational> scale(sites + 1, hbar);
  scale[0] = 0;
  return LinearBracket::sites(gl_structure(n), scale);
}

inline LinearBracket braided_sites(const Braiding& r, std::size_t sites, ColorPtr color) {
  if (!r.is_involutive()) throw UnsupportedKind("braided brackets need an involutive braiding");
  std::vector<Rational> scale(sites + 1, Rational(1));
  scale[0] = 0;
  return LinearBracket::sites(defi_structure(r), scale, std::move(color));
}

/// Bilinear extension by the (color) Leibniz rule.
template <class Coeff>
AlgebraElement<Coeff> bracket_extend(const LinearBracket& br, const AlgebraElement<Coeff>& a,
                                     const AlgebraElement<Coeff>& b) {
  auto same = [&](const AlgebraElement<Coeff>& x) {
    if (x.is_constant()) return true;
    const auto& c = x.color();
    if (!c || !br.color()) return !c && !br.color();
    return c == br.color() || *c == *br.color();
  };
  if (!same(a) || !same(b)) throw ColorTableMismatch();
  auto out = AlgebraElement<Coeff>::with_color(br.color());
  for (const auto& [ma, ca] : a.terms()) {
    if (ma.empty()) continue;
    for (const auto& [mb, cb] : b.terms()) {
      if (mb.empty()) continue;
      QElement piece = br.monomials(ma, mb);
      if (piece.is_zero()) continue;
      Coeff c = ca * cb;
      for (const auto& [m, v] : piece.terms())
        out += AlgebraElement<Coeff>::from_word(m, br.color(), c * Coeff(v));
    }
  }
  return out;
}

inline QElement gen_element(const LinearBracket& br, Gen g) { return QElement::generator(g, br.color()); }

/// All generators l_i^j^(k)[site] with k <= max_order.
inline std::vector<Gen> generators_up_to(std::size_t n, unsigned max_order, unsigned site = 0) {
  std::vector<Gen> out;
  for (unsigned k = 0; k <= max_order; ++k)
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) out.push_back(make_gen(i, j, k, site));
  return out;
}

// ---------------------------------------------------------------------------
// Local checks.

/// {{a,b},c} + eps(a,c)eps(b,c){{c,a},b} + eps(a,b)eps(a,c){{b,c},a} on generator triples.
inline CheckReport check_jacobi(const LinearBracket& br, const std::vector<Gen>& gens, nlohmann::json params = {}) {
  return timed_check("jacobi", std::move(params), [&]() -> std::optional<std::string> {
    const auto& col = br.color();
    for (Gen a : gens)
      for (Gen b : gens)
        for (Gen c : gens) {
          auto ab = br(a, b), ca = br(c, a), bc = br(b, c);
          auto j = bracket_extend(br, ab, gen_element(br, c));
          j += (gen_color(col, a, c) * gen_color(col, b, c)) * bracket_extend(br, ca, gen_element(br, b));
          j += (gen_color(col, a, b) * gen_color(col, a, c)) * bracket_extend(br, bc, gen_element(br, a));
          if (!j.is_zero())
            return "triple (" + gen_name(a) + ", " + gen_name(b) + ", " + gen_name(c) + ") residue " + clip(j.to_string());
        }
    return std::nullopt;
  });
}

/// {a,b} + eps(a,b){b,a} = 0 on generator pairs.
inline CheckReport check_antisymmetry(const LinearBracket& br, const std::vector<Gen>& gens, nlohmann::json params = {}) {
  return timed_check("antisymmetry", std::move(params), [&]() -> std::optional<std::string> {
    for (Gen a : gens)
      for (Gen b : gens) {
        auto s = br(a, b) + gen_color(br.color(), a, b) * br(b, a);
        if (!s.is_zero()) return "pair (" + gen_name(a) + ", " + gen_name(b) + ") residue " + clip(s.to_string());
      }
    return std::nullopt;
  });
}

/// d/dv {a,b} = {a',b} + {a,b'} on generator pairs.
inline CheckReport check_derivation_compatibility(const LinearBracket& br, const std::vector<Gen>& gens,
                                                  nlohmann::json params = {}) {
  return timed_check("derivation-compatibility", std::move(params), [&]() -> std::optional<std::string> {
    for (Gen a : gens)
      for (Gen b : gens) {
        auto lhs = br(a, b).d_dv();
        auto rhs = br(raise_order(a), b) + br(a, raise_order(b));
        if (!(lhs == rhs))
          return "pair (" + gen_name(a) + ", " + gen_name(b) + "): d/dv{a,b} = " + clip(lhs.to_string()) +
                 " but {a',b}+{a,b'} = " + clip(rhs.to_string());
      }
    return std::nullopt;
  });
}

/// Tr (or Tr^R with operator C) of powers of L^(m).
inline std::vector<QElement> trace_powers(std::size_t n, unsigned m, unsigned pow_max, const ColorPtr& color,
                                          const std::optional<QMatrix>& c_op = std::nullopt) {
  auto l = generator_matrix<Rational>(n, m, 0, color);
  std::vector<QElement> out;
  auto p = MatrixOverAlgebra<Rational>::identity(n);
  for (unsigned k = 0; k <= pow_max; ++k) {
    out.push_back(c_op ? r_trace(*c_op, p) : trace(p));
    p = p * l;
  }
  return out;
}

/// {Tr L^(m)^k, Tr L^(m)^l} = 0 for 1 <= k, l <= pow_max and m <= der_max.
inline CheckReport check_trace_involution(const LinearBracket& br, unsigned pow_max, unsigned der_min, unsigned der_max,
                                          const std::optional<QMatrix>& c_op = std::nullopt,
                                          nlohmann::json params = {}) {
  return timed_check("trace-involution", std::move(params), [&]() -> std::optional<std::string> {
    for (unsigned m = der_min; m <= der_max; ++m) {
      auto tr = trace_powers(br.n(), m, pow_max, br.color(), c_op);
      for (unsigned k = 1; k <= pow_max; ++k)
        for (unsigned l = 1; l <= pow_max; ++l) {
          auto s = bracket_extend(br, tr[k], tr[l]);
          if (!s.is_zero())
            return "m=" + std::to_string(m) + " k=" + std::to_string(k) + " l=" + std::to_string(l) + " residue " +
                   clip(s.to_string());
        }
    }
    return std::nullopt;
  });
}

/// {A_1bar, B_2bar} as an n^2 x n^2 matrix: entry e is sum_{a,b} T[e,(a,b)] {A_a, B_b}.
inline MatrixOverAlgebra<Rational> matrix_bracket(const LinearBracket& br, const BraidedFrame& frame,
                                                  const MatrixOverAlgebra<Rational>& a,
                                                  const MatrixOverAlgebra<Rational>& b) {
  std::size_t n = frame.n, w = n * n;
  std::vector<QElement> pair(w * w);
  for (std::size_t x = 0; x < w; ++x)
    for (std::size_t y = 0; y < w; ++y) pair[x * w + y] = bracket_extend(br, a(x / n, x % n), b(y / n, y % n));
  MatrixOverAlgebra<Rational> out(w, w);
  for (std::size_t e = 0; e < w * w; ++e)
    for (std::size_t p = 0; p < w * w; ++p) {
      const Rational& t = frame.t(e, p);
      if (!t.is_zero()) out(e / w, e % w) += t * pair[p];
    }
  return out;
}

/// The power formula
///   {L_1bar^k, L_2bar^l} = sum_{i,j} L_1bar^i L_2bar^j {L_1bar, L_2bar} L_1bar^{k-i-1} L_2bar^{l-j-1}
/// for the order-0 generating matrix.
inline CheckReport check_power_formula(const LinearBracket& br, const Braiding& r, unsigned kmax,
                                       nlohmann::json params = {}) {
  return timed_check("power-formula", std::move(params), [&]() -> std::optional<std::string> {
    std::size_t n = br.n();
    auto frame = braided_frame(r);
    auto l = generator_matrix<Rational>(n, 0, 0, br.color());
    std::vector<MatrixOverAlgebra<Rational>> pw{MatrixOverAlgebra<Rational>::identity(n)};
    for (unsigned k = 1; k <= kmax; ++k) pw.push_back(pw.back() * l);
    std::vector<MatrixOverAlgebra<Rational>> p1, p2;
    for (const auto& p : pw) {
      p1.push_back(bar_embed(p, 1, 2, r));
      p2.push_back(bar_embed(p, 2, 2, r));
    }
    auto base = matrix_bracket(br, frame, l, l);
    for (unsigned k = 1; k <= kmax; ++k)
      for (unsigned m = 1; m <= kmax; ++m) {
        auto lhs = matrix_bracket(br, frame, pw[k], pw[m]);
        MatrixOverAlgebra<Rational> rhs(n * n, n * n);
        for (unsigned i = 0; i < k; ++i)
          for (unsigned j = 0; j < m; ++j) rhs += p1[i] * p2[j] * base * p1[k - i - 1] * p2[m - j - 1];
        if (!(lhs == rhs)) return "k=" + std::to_string(k) + " l=" + std::to_string(m);
      }
    return std::nullopt;
  });
}

}  // namespace brpois
