#pragma once

/// Reflection equation algebras in the free tensor algebra T(W).
///
/// Generators: id = order * n^2 + (i*n + j) for l_i^j^(order). Relations are
/// kept unreduced; all membership questions are rank computations over Q at
/// a fixed degree bound.

#include <functional>
#include <map>
#include <random>
#include <set>
#include <optional>
#include <string>
#include <vector>

#include "brpois/brackets.hpp"

namespace brpois {

class BoundTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHecke : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RelationSet {
  std::size_t n = 0;
  std::string source;
  std::vector<FreeElement> relations;
};

inline std::string free_gen_name(std::uint32_t g, std::size_t n) {
  std::size_t w = n * n, a = g % w, order = g / w;
  std::string s = "l" + std::to_string(a / n + 1) + "^" + std::to_string(a % n + 1);
  if (order > 0) s += "^(" + std::to_string(order) + ")";
  return s;
}

inline nlohmann::json to_json(const RelationSet& rs) {
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : rs.relations) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [w, c] : r.terms()) {
      nlohmann::json word = nlohmann::json::array();
      for (auto g : w) word.push_back(free_gen_name(g, rs.n));
      terms.push_back({{"word", word}, {"coeff", c.to_string()}});
    }
    rels.push_back(terms);
  }
  return {{"n", rs.n}, {"source", rs.source}, {"relations", rels}};
}

namespace detail {

inline void collect_entries(const Matrix<FreeElement>& m, RelationSet& out) {
  for (const auto& e : m.data())
    if (!e.is_zero()) out.relations.push_back(e);
}

/// L_1 = L (x) I with entries l^(order).
inline Matrix<FreeElement> first_leg(std::size_t n, unsigned order) {
  auto l = free_generating_matrix(n, static_cast<std::uint32_t>(order * n * n));
  return embed_single(l, n, 1, 2);
}

}  // namespace detail

/// R L_1 R L_1 - L_1 R L_1 R - hbar (R L_1 - L_1 R), entry by entry.
inline RelationSet re_relations(const Braiding& r, const Rational& hbar) {
  std::size_t n = r.dim();
  const QMatrix& rm = r.matrix().matrix();
  auto l1 = detail::first_leg(n, 0);
  auto rel = rm * l1 * rm * l1 - l1 * rm * l1 * rm;
  if (!hbar.is_zero()) rel = rel - (rm * l1 - l1 * rm).map([&](const FreeElement& e) { return hbar * e; });
  RelationSet out{n, "RE(hbar=" + hbar.to_string() + ")", {}};
  detail::collect_entries(rel, out);
  return out;
}

/// R L_1^(k) R L_1^(l) - L_1^(l) R L_1^(k) R - alpha_r(k,l)(R L_1^(k+l+r) - L_1^(k+l+r) R), k,l <= k_max.
inline RelationSet rea_relations(const Braiding& r, int order, int k_max) {
  std::size_t n = r.dim();
  const QMatrix& rm = r.matrix().matrix();
  RelationSet out{n, "REA(r=" + std::to_string(order) + ",k_max=" + std::to_string(k_max) + ")", {}};
  for (int k = 0; k <= k_max; ++k)
    for (int l = 0; l <= k_max; ++l) {
      auto lk = detail::first_leg(n, static_cast<unsigned>(k)), ll = detail::first_leg(n, static_cast<unsigned>(l));
      auto top = detail::first_leg(n, static_cast<unsigned>(k + l + order));
      Rational a = alpha_coeff(order, k, l);
      auto rel = rm * lk * rm * ll - ll * rm * lk * rm -
                 (rm * top - top * rm).map([&](const FreeElement& e) { return a * e; });
      detail::collect_entries(rel, out);
    }
  return out;
}

/// Image of I - R_W: l_a l_b - sum R_W(a b -> c d) l_c l_d.
inline RelationSet symmetric_relations(const Braiding& r) {
  std::size_t n = r.dim(), w = n * n;
  auto rw = rw_and_q(r, extend_to_dual(r, r.skew())).rw;
  RelationSet out{n, "Im(I-R_W)", {}};
  for (std::uint32_t a = 0; a < w; ++a)
    for (std::uint32_t b = 0; b < w; ++b) {
      FreeElement e = FreeElement::word({a, b});
      for (std::size_t c = 0; c < w * w; ++c)
        if (!rw(a * w + b, c).is_zero())
          e -= FreeElement::word({static_cast<std::uint32_t>(c / w), static_cast<std::uint32_t>(c % w)}, rw(a * w + b, c));
      if (!e.is_zero()) out.relations.push_back(e);
    }
  return out;
}

/// Words to coordinates, shared between the vectors of one computation.
class WordIndex {
 public:
  std::size_t operator()(const Word& w) {
    auto [it, fresh] = index_.try_emplace(w, index_.size());
    return it->second;
  }
  SparseVector vector(const FreeElement& e) {
    SparseVector v;
    for (const auto& [w, c] : e.terms()) v.emplace((*this)(w), c);
    return v;
  }

 private:
  std::map<Word, std::size_t> index_;
};

inline bool span_contains(const std::vector<FreeElement>& span, const std::vector<FreeElement>& elems) {
  WordIndex idx;
  SparseBasis basis;
  for (const auto& e : span) basis.insert(idx.vector(e));
  for (const auto& e : elems)
    if (!basis.contains(idx.vector(e))) return false;
  return true;
}

inline bool spans_equal(const RelationSet& a, const RelationSet& b) {
  return span_contains(a.relations, b.relations) && span_contains(b.relations, a.relations);
}

/// Certificate of membership: the spanning products x * rel * y and their coefficients.
struct MembershipCertificate {
  std::vector<FreeElement> products;
  std::vector<Rational> coefficients;
};

namespace detail {

inline std::vector<Word> words_up_to(const std::vector<std::uint32_t>& alphabet, std::size_t len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t l = 1; l <= len; ++l) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (auto g : alphabet) {
        Word w = out[i];
        w.push_back(g);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

inline std::vector<std::uint32_t> alphabet_of(const std::vector<FreeElement>& elems) {
  std::set<std::uint32_t> s;
  for (const auto& e : elems)
    for (const auto& [w, c] : e.terms()) s.insert(w.begin(), w.end());
  return {s.begin(), s.end()};
}

inline std::optional<MembershipCertificate> member_of_span(const FreeElement& e, std::vector<FreeElement> products) {
  WordIndex idx;
  SparseBasis basis(true);
  for (const auto& p : products) basis.insert(idx.vector(p));
  auto cert = basis.certificate(idx.vector(e));
  if (!cert) return std::nullopt;
  MembershipCertificate out;
  for (const auto& [i, c] : *cert) {
    out.products.push_back(products[i]);
    out.coefficients.push_back(c);
  }
  return out;
}

}  // namespace detail

/// e in span{ x * rel * y : words x, y over the generators in play, total degree <= bound }.
inline std::optional<MembershipCertificate> ideal_certificate(const FreeElement& e, const RelationSet& rels,
                                                              std::size_t degree_bound) {
  if (e.degree() > degree_bound)
    throw BoundTooSmall("element of degree " + std::to_string(e.degree()) + " exceeds bound " +
                        std::to_string(degree_bound));
  std::vector<FreeElement> all = rels.relations;
  all.push_back(e);
  auto alphabet = detail::alphabet_of(all);
  std::vector<FreeElement> products;
  for (const auto& rel : rels.relations) {
    std::size_t d = rel.degree();
    if (d > degree_bound) continue;
    auto words = detail::words_up_to(alphabet, degree_bound - d);
    for (const auto& x : words)
      for (const auto& y : words)
        if (x.size() + y.size() + d <= degree_bound)
          products.push_back(FreeElement::word(x) * rel * FreeElement::word(y));
  }
  return detail::member_of_span(e, std::move(products));
}

inline bool ideal_membership(const FreeElement& e, const RelationSet& rels, std::size_t degree_bound) {
  return ideal_certificate(e, rels, degree_bound).has_value();
}

/// The map L -> hbar I - (q - q^{-1}) L sends the non-modified relations into
/// the span of the modified ones; the inverse map brings them back.
inline CheckReport check_change_map(const Braiding& r, const Rational& hbar, nlohmann::json params = {}) {
  if (!r.is_hecke()) throw NotHecke("the change map needs a Hecke symmetry with q != +-1");
  return timed_check("change-map", std::move(params), [&]() -> std::optional<std::string> {
    std::size_t n = r.dim();
    Rational c = *r.classification().q_minus_qinv;
    auto plain = re_relations(r, 0), modified = re_relations(r, hbar);
    auto forward = [&](std::uint32_t g) {
      FreeElement out = -c * FreeElement::generator(g);
      if (g / n == g % n) out += hbar;
      return out;
    };
    auto backward = [&](std::uint32_t g) {
      FreeElement out = (-c.inverse()) * FreeElement::generator(g);
      if (g / n == g % n) out += hbar / c;
      return out;
    };
    for (const auto& rel : plain.relations) {
      auto img = rel.substitute(forward);
      if (!ideal_membership(img, modified, 2))
        return "image of non-modified relation " + clip(rel.to_string([n](auto g) { return free_gen_name(g, n); })) +
               " is not in the modified relations";
    }
    for (const auto& rel : modified.relations) {
      auto img = rel.substitute(backward);
      if (!ideal_membership(img, plain, 2))
        return "inverse image of modified relation " +
               clip(rel.to_string([n](auto g) { return free_gen_name(g, n); })) + " is not in the non-modified relations";
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------------------
// Braided Lie algebra.

struct BraidedLieData {
  StructureTensor defi;
  /// The product l_i^j o_B l_k^l = B_k^j l_i^l as a W (x) W -> W map.
  QMatrix circ_b;
  /// o_B (I - Q).
  QMatrix lie;
  /// lie = scalar * defi, when proportional.
  std::optional<Rational> scalar;
  std::vector<CheckReport> checks;
};

inline QMatrix circ_b_map(const Braiding& r) {
  std::size_t n = r.dim(), w = n * n;
  const QMatrix& b = r.skew().b_op;
  QMatrix m(w * w, w);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) m((i * n + j) * w + k * n + l, i * n + l) = b(k, j);
  return m;
}

/// <l_i^j, l_k^l> = delta_i^l B_k^j as a W (x) W -> Q map (one column).
inline QMatrix l_pairing(const Braiding& r) {
  std::size_t n = r.dim(), w = n * n;
  QMatrix ev(w, 1);
  for (std::size_t i = 0; i < n; ++i) ev(i * n + i, 0) = 1;
  return circ_b_map(r) * ev;
}

inline std::optional<Rational> proportionality(const QMatrix& a, const QMatrix& b) {
  std::optional<Rational> s;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const Rational &x = a.data()[i], &y = b.data()[i];
    if (y.is_zero()) {
      if (!x.is_zero()) return std::nullopt;
      continue;
    }
    Rational t = x / y;
    if (s && *s != t) return std::nullopt;
    s = t;
  }
  return s;
}

/// R-invariance of a map m: W^(x)2 -> U, where U is W (u_dim = w) or Q (u_dim = 1):
///   R (m (x) I) = (I (x) m) R_12 R_23  and  R (I (x) m) = (m (x) I) R_23 R_12,
/// with R acting as the flip when one side is Q.
inline std::optional<std::string> invariance_residual(const QMatrix& m, const QMatrix& rw, std::size_t w) {
  auto id = QMatrix::identity(w);
  auto r12 = kron(rw, id), r23 = kron(id, rw);
  std::size_t u = m.cols();
  QMatrix cross = u == 1 ? QMatrix::identity(w) : rw;
  if (!(kron(m, id) * cross == r23 * r12 * kron(id, m))) return "m (x) I side";
  if (!(kron(id, m) * cross == r12 * r23 * kron(m, id))) return "I (x) m side";
  return std::nullopt;
}

inline BraidedLieData braided_lie_constants(const Braiding& r, nlohmann::json params = {}) {
  BraidedLieData out;
  std::size_t n = r.dim(), w = n * n;
  out.defi = defi_structure(r);
  auto wb = rw_and_q(r, extend_to_dual(r, r.skew()));
  const QMatrix& s = out.defi.s;
  auto id = QMatrix::identity(w);
  out.circ_b = circ_b_map(r);
  out.lie = (QMatrix::identity(w * w) - wb.q) * out.circ_b;
  out.scalar = proportionality(out.lie, s);

  // [x,[y,z]] = [[x,y],z] + [y~,[x~,z]] with y~ (x) x~ = Q(x (x) y).
  out.checks.push_back(timed_check("braided-jacobi", params, [&]() -> std::optional<std::string> {
    QMatrix inner_right = kron(id, s) * s;
    QMatrix j = inner_right - kron(s, id) * s - kron(wb.q, id) * inner_right;
    for (std::size_t row = 0; row < j.rows(); ++row)
      for (std::size_t c = 0; c < j.cols(); ++c)
        if (!j(row, c).is_zero()) {
          std::size_t a = row / (w * w), b = (row / w) % w, d = row % w;
          return "triple (" + free_gen_name(static_cast<std::uint32_t>(a), n) + ", " +
                 free_gen_name(static_cast<std::uint32_t>(b), n) + ", " + free_gen_name(static_cast<std::uint32_t>(d), n) +
                 ") residue " + j(row, c).to_string() + " on " + free_gen_name(static_cast<std::uint32_t>(c), n);
        }
    return std::nullopt;
  }));

  // {,}((q^2+q^-2) X + R^{-1} X R + R X R^{-1}) = 0, X = L_1bar (.) L_2bar; q = 1 when involutive.
  out.checks.push_back(timed_check("braided-skew-symmetry", params, [&]() -> std::optional<std::string> {
    if (!r.is_hecke() && !r.is_involutive()) return "braiding is neither involutive nor Hecke";
    Rational c = r.is_hecke() ? *r.classification().q_minus_qinv : Rational(0);
    auto l = free_generating_matrix(n);
    auto x = bar_embed_matrix(l, 1, 2, r) * bar_embed_matrix(l, 2, 2, r);
    const QMatrix &rm = r.matrix().matrix(), &ri = r.inverse().matrix();
    Rational f = c * c + 2;  // q^2 + q^-2
    auto y = x.map([&](const FreeElement& e) { return f * e; }) + ri * x * rm + rm * x * ri;
    QMatrix res = entry_coefficients(y, w, 2) * s;
    for (std::size_t e = 0; e < res.rows(); ++e)
      for (std::size_t c = 0; c < res.cols(); ++c)
        if (!res(e, c).is_zero())
          return "entry " + std::to_string(e) + " of the symmetrized matrix has bracket component " +
                 res(e, c).to_string() + " on " + free_gen_name(static_cast<std::uint32_t>(c), n);
    return std::nullopt;
  }));

  nlohmann::json p = params;
  if (out.scalar) p["scalar"] = out.scalar->to_string();
  out.checks.push_back(timed_check("braided-lie-cross-check", p, [&]() -> std::optional<std::string> {
    if (!out.scalar) return std::string("o_B(I - Q) is not proportional to the bracket tensor");
    if (out.scalar->is_zero()) return std::string("o_B(I - Q) vanishes");
    return std::nullopt;
  }));

  out.checks.push_back(timed_check("circ-b-invariance", params, [&]() -> std::optional<std::string> {
    if (auto e = invariance_residual(out.circ_b, wb.rw, w)) return "o_B fails R_W-invariance, " + *e;
    if (auto e = invariance_residual(l_pairing(r), wb.rw, w)) return "pairing fails R_W-invariance, " + *e;
    return std::nullopt;
  }));
  return out;
}

// ---------------------------------------------------------------------------
// Coproduct.

namespace detail {

/// An element of A (x) A stored as words whose letters from the second
/// factor (offset by `shift`) all follow the letters of the first.
struct TensorSquare {
  std::uint32_t shift;
  const QMatrix* rw;  // crossing on generators, indexed by labels mod w
  std::size_t w;

  bool right(std::uint32_t g) const { return g >= shift; }

  /// Normal-orders a word by moving second-factor letters to the right of
  /// first-factor letters with the crossing R_W.
  FreeElement normal_order(const Word& word, const Rational& c) const {
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
      if (right(word[i]) && !right(word[i + 1])) {
        std::uint32_t b = word[i] - shift, a = word[i + 1];
        std::uint32_t bo = b / w, ao = a / w;
        FreeElement out;
        std::size_t row = (b % w) * w + a % w;
        for (std::size_t col = 0; col < w * w; ++col) {
          const Rational& x = (*rw)(row, col);
          if (x.is_zero()) continue;
          // R_W(b (x) a) = sum x * (a' (x) b'); labels keep their derivative orders.
          Word next(word.begin(), word.begin() + static_cast<long>(i));
          next.push_back(static_cast<std::uint32_t>(ao * w + col / w));
          next.push_back(static_cast<std::uint32_t>(shift + bo * w + col % w));
          next.insert(next.end(), word.begin() + static_cast<long>(i + 2), word.end());
          out += normal_order(next, c * x);
        }
        return out;
      }
    return FreeElement::word(word, c);
  }

  FreeElement product(const FreeElement& x, const FreeElement& y) const {
    FreeElement out;
    for (const auto& [wx, cx] : x.terms())
      for (const auto& [wy, cy] : y.terms()) {
        Word w2 = wx;
        w2.insert(w2.end(), wy.begin(), wy.end());
        out += normal_order(w2, cx * cy);
      }
    return out;
  }
};

}  // namespace detail

/// Delta(l) = l (x) 1 + 1 (x) l - (q - q^{-1}) sum_k l_i^k (x) l_k^j, extended to
/// degree-2 relations multiplicatively with the R_W crossing; each image must
/// lie in the degree-bounded ideal of rel (x) 1 and 1 (x) rel. A zero bound
/// means the largest degree among the images.
inline CheckReport check_coproduct(const Braiding& r, const RelationSet& rels, std::size_t degree_bound = 0,
                                   nlohmann::json params = {}) {
  return timed_check("coproduct", std::move(params), [&]() -> std::optional<std::string> {
    std::size_t n = r.dim(), w = n * n;
    Rational c = r.is_hecke() ? *r.classification().q_minus_qinv : Rational(0);
    if (!r.is_hecke() && !r.is_involutive()) return std::string("braiding is neither involutive nor Hecke");
    auto rw = rw_and_q(r, extend_to_dual(r, r.skew())).rw;
    std::uint32_t max_label = 0;
    for (const auto& rel : rels.relations)
      for (const auto& [word, x] : rel.terms())
        for (auto g : word) max_label = std::max(max_label, g);
    std::uint32_t shift = static_cast<std::uint32_t>((max_label / w + 1) * w);
    detail::TensorSquare ts{shift, &rw, w};

    auto delta_gen = [&](std::uint32_t g) {
      FreeElement out = FreeElement::generator(g) + FreeElement::generator(shift + g);
      if (!c.is_zero()) {
        if (g >= w) throw std::logic_error("the Hecke coproduct is defined on L only");
        std::size_t i = g / n, j = g % n;
        for (std::size_t k = 0; k < n; ++k)
          out -= c * FreeElement::word({static_cast<std::uint32_t>(i * n + k), static_cast<std::uint32_t>(shift + k * n + j)});
      }
      return out;
    };
    auto delta = [&](const FreeElement& e) {
      FreeElement out;
      for (const auto& [word, x] : e.terms()) {
        FreeElement prod(x);
        for (auto g : word) prod = ts.product(prod, delta_gen(g));
        out += prod;
      }
      return out;
    };

    std::vector<FreeElement> images;
    std::size_t needed = 0;
    for (const auto& rel : rels.relations) {
      images.push_back(delta(rel));
      needed = std::max(needed, images.back().degree());
    }
    std::size_t bound = degree_bound == 0 ? needed : degree_bound;
    if (needed > bound)
      throw BoundTooSmall("coproduct image of degree " + std::to_string(needed) + " exceeds bound " +
                          std::to_string(bound));

    // Spanning set of the ideal slice: (x rel y) (x) z and x (x) (y rel z).
    std::vector<std::uint32_t> left, right;
    for (std::uint32_t g = 0; g < shift; ++g) {
      left.push_back(g);
      right.push_back(shift + g);
    }
    auto rshift = [&](const FreeElement& e) {
      return e.substitute([&](std::uint32_t g) { return FreeElement::generator(shift + g); });
    };
    std::vector<FreeElement> products;
    for (const auto& rel : rels.relations) {
      std::size_t d = rel.degree();
      if (d > bound) continue;
      std::size_t room = bound - d;
      auto lw = detail::words_up_to(left, room), rwd = detail::words_up_to(right, room);
      auto rel_r = rshift(rel);
      for (const auto& x : lw)
        for (const auto& y : lw)
          for (const auto& z : rwd)
            if (x.size() + y.size() + z.size() <= room)
              products.push_back(FreeElement::word(x) * rel * FreeElement::word(y) * FreeElement::word(z));
      for (const auto& x : lw)
        for (const auto& y : rwd)
          for (const auto& z : rwd)
            if (x.size() + y.size() + z.size() <= room)
              products.push_back(FreeElement::word(x) * FreeElement::word(y) * rel_r * FreeElement::word(z));
    }
    WordIndex idx;
    SparseBasis basis;
    for (const auto& p : products) basis.insert(idx.vector(p));
    for (std::size_t i = 0; i < images.size(); ++i)
      if (!basis.contains(idx.vector(images[i])))
        return "Delta of " + clip(rels.relations[i].to_string([n](auto g) { return free_gen_name(g, n); })) +
               " is not in the tensor-square ideal";
    return std::nullopt;
  });
}

// ---------------------------------------------------------------------------
// R-trace identities.

/// Tr^R_12 (R X R^{-1}) = Tr^R_12 X for `samples` seeded random X on V (x) V.
inline CheckReport check_rtrace_conjugation(const Braiding& r, int samples, std::uint64_t seed,
                                            nlohmann::json params = {}) {
  return timed_check("rtrace-conjugation", std::move(params), [&]() -> std::optional<std::string> {
    std::size_t n = r.dim();
    const QMatrix& c = r.skew().c_op;
    QMatrix cc = kron(c, c);
    std::mt19937_64 gen(seed);
    auto draw = [&gen](long lo, long hi) { return lo + static_cast<long>(gen() % static_cast<std::uint64_t>(hi - lo + 1)); };
    for (int s = 0; s < samples; ++s) {
      QMatrix x(n * n, n * n);
      for (std::size_t i = 0; i < n * n; ++i)
        for (std::size_t j = 0; j < n * n; ++j) x(i, j) = Rational(draw(-9, 9), draw(1, 5));
      auto lhs = trace(cc * (r.matrix().matrix() * x * r.inverse().matrix()));
      auto rhs = trace(cc * x);
      if (lhs != rhs)
        return "sample " + std::to_string(s) + ": Tr^R(R X R^-1) = " + lhs.to_string() + " but Tr^R X = " + rhs.to_string();
    }
    return std::nullopt;
  });
}

/// Tr^R (A B) = Tr^R (B A) for A = L^(k), B = L^(l) in the braided commutative algebra.
inline CheckReport check_rtrace_cyclicity(const Braiding& r, const ColorPtr& color, unsigned kmax,
                                          nlohmann::json params = {}) {
  return timed_check("rtrace-cyclicity", std::move(params), [&]() -> std::optional<std::string> {
    const QMatrix& c = r.skew().c_op;
    for (unsigned k = 0; k <= kmax; ++k)
      for (unsigned l = 0; l <= kmax; ++l) {
        auto a = generator_matrix<Rational>(r.dim(), k, 0, color), b = generator_matrix<Rational>(r.dim(), l, 0, color);
        auto lhs = r_trace(c, mat_odot(a, b)), rhs = r_trace(c, mat_odot(b, a));
        if (!(lhs == rhs))
          return "k=" + std::to_string(k) + " l=" + std::to_string(l) + ": " + clip(lhs.to_string()) + " vs " +
                 clip(rhs.to_string());
      }
    return std::nullopt;
  });
}

}  // namespace brpois
