#pragma once

/// Polynomials over Q in a handful of named function symbols (for example
/// x_p = 1/(v_p - u)). Arithmetic never divides, so it stays cheap; the
/// relations between symbols are only applied when converting to a
/// RationalFunction.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "brpois/ratfunc.hpp"

namespace brpois {

class FnPoly {
 public:
  /// Sorted list of symbol ids with repetition.
  using Monomial = std::vector<std::uint16_t>;
  using Terms = std::map<Monomial, Rational>;

  FnPoly() = default;
  FnPoly(const Rational& c) {  // NOLINT
    if (!c.is_zero()) t_[{}] = c;
  }
  FnPoly(int c) : FnPoly(Rational(c)) {}  // NOLINT

  static FnPoly symbol(std::uint16_t id, const Rational& c = 1) {
    FnPoly f;
    if (!c.is_zero()) f.t_[{id}] = c;
    return f;
  }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  FnPoly& operator+=(const FnPoly& o) {
    for (const auto& [m, c] : o.t_) add(m, c);
    return *this;
  }
  FnPoly& operator-=(const FnPoly& o) {
    for (const auto& [m, c] : o.t_) add(m, -c);
    return *this;
  }
  FnPoly operator-() const {
    FnPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }
  friend FnPoly operator+(FnPoly a, const FnPoly& b) { return a += b; }
  friend FnPoly operator-(FnPoly a, const FnPoly& b) { return a -= b; }
  friend FnPoly operator*(const FnPoly& a, const FnPoly& b) {
    FnPoly r;
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) {
        Monomial m;
        m.reserve(ma.size() + mb.size());
        std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
        r.add(m, ca * cb);
      }
    return r;
  }
  friend bool operator==(const FnPoly& a, const FnPoly& b) { return a.t_ == b.t_; }

  /// Evaluates in the field of rational functions, one symbol image per id.
  RationalFunction to_rational_function(const std::function<RationalFunction(std::uint16_t)>& image) const {
    std::map<std::uint16_t, RationalFunction> cache;
    auto get = [&](std::uint16_t id) -> const RationalFunction& {
      auto it = cache.find(id);
      if (it == cache.end()) it = cache.emplace(id, image(id)).first;
      return it->second;
    };
    RationalFunction out;
    for (const auto& [m, c] : t_) {
      RationalFunction term(c);
      for (auto id : m) term *= get(id);
      out += term;
    }
    return out;
  }

  std::string to_string(const std::function<std::string(std::uint16_t)>& name) const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : t_) {
      std::string mono;
      for (auto id : m) mono += (mono.empty() ? "" : "*") + name(id);
      append_term(out, c.to_string(), mono);
    }
    return out;
  }
  std::string to_string() const {
    return to_string([](std::uint16_t id) { return "s" + std::to_string(id); });
  }

 private:
  void add(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  Terms t_;
};

inline bool is_zero(const FnPoly& f) { return f.is_zero(); }

}  // namespace brpois
