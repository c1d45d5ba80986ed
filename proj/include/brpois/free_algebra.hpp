#pragma once

/// Free associative algebra over Q on integer-labelled generators.
///
/// Words are stored as written, with no reordering: this is the tensor
/// algebra T(W) in which relation sets and ideal slices live.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "brpois/rational.hpp"

namespace brpois {

using Word = std::vector<std::uint32_t>;

class FreeElement {
 public:
  using Terms = std::map<Word, Rational>;

  FreeElement() = default;
  FreeElement(const Rational& c) {  // NOLINT: scalars embed as multiples of the empty word
    if (!c.is_zero()) terms_.emplace(Word{}, c);
  }
  FreeElement(int c) : FreeElement(Rational(c)) {}  // NOLINT

  static FreeElement generator(std::uint32_t g) {
    FreeElement e;
    e.terms_.emplace(Word{g}, Rational(1));
    return e;
  }
  static FreeElement word(Word w, Rational c = 1) {
    FreeElement e;
    if (!c.is_zero()) e.terms_.emplace(std::move(w), std::move(c));
    return e;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.size());
    return d;
  }

  /// Homogeneous component of the given word length.
  FreeElement component(std::size_t deg) const {
    FreeElement out;
    for (const auto& [w, c] : terms_)
      if (w.size() == deg) out.terms_.emplace(w, c);
    return out;
  }

  Rational coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Word& w, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FreeElement& operator+=(const FreeElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  FreeElement& operator-=(const FreeElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  FreeElement operator-() const {
    FreeElement out(*this);
    for (auto& [w, c] : out.terms_) c = -c;
    return out;
  }
  friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
  friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }

  friend FreeElement operator*(const FreeElement& a, const FreeElement& b) {
    FreeElement out;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.add_term(w, ca * cb);
      }
    return out;
  }
  friend FreeElement operator*(const Rational& s, const FreeElement& a) {
    FreeElement out;
    if (s.is_zero()) return out;
    for (const auto& [w, c] : a.terms_) out.terms_.emplace(w, s * c);
    return out;
  }
  friend FreeElement operator*(const FreeElement& a, const Rational& s) { return s * a; }

  friend bool operator==(const FreeElement& a, const FreeElement& b) { return a.terms_ == b.terms_; }

  /// Applies a linear substitution generator -> element, multiplicatively.
  template <class F>
  FreeElement substitute(F&& image) const {
    FreeElement out;
    for (const auto& [w, c] : terms_) {
      FreeElement prod(c);
      for (auto g : w) prod = prod * image(g);
      out += prod;
    }
    return out;
  }

  template <class Namer>
  std::string to_string(Namer&& name) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms_) {
      std::string mono;
      for (auto g : w) mono += (mono.empty() ? "" : "*") + name(g);
      append_term(out, c.to_string(), mono);
    }
    return out;
  }
  std::string to_string() const {
    return to_string([](std::uint32_t g) { return "g" + std::to_string(g); });
  }

 private:
  Terms terms_;
};

inline bool is_zero(const FreeElement& e) { return e.is_zero(); }

}  // namespace brpois
