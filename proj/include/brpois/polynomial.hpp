#pragma once

/// Dense polynomials over Q in v (UPoly) and in u, v (Poly2, stored as a
/// polynomial in u whose coefficients are UPolys). The lex order used for
/// leading terms puts u above v.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "brpois/rational.hpp"

namespace brpois {

class UPoly {
 public:
  UPoly() = default;
  UPoly(const Rational& c) {  // NOLINT: constants embed
    if (!c.is_zero()) c_.push_back(c);
  }
  UPoly(int c) : UPoly(Rational(c)) {}  // NOLINT
  explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly x() { return UPoly(std::vector<Rational>{Rational(0), Rational(1)}); }
  static UPoly monomial(std::size_t e, const Rational& c) {
    std::vector<Rational> v(e + 1);
    v[e] = c;
    return UPoly(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t e) const { return e < c_.size() ? c_[e] : Rational(0); }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  UPoly operator-() const {
    UPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(out));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly derivative() const {
    std::vector<Rational> out;
    for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * Rational(static_cast<long>(i)));
    return UPoly(std::move(out));
  }

  Rational eval(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UPoly monic() const {
    if (is_zero()) return {};
    Rational inv = lead().inverse();
    UPoly r = *this;
    for (auto& x : r.c_) x *= inv;
    return r;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Quotient and remainder of Euclidean division; throws on zero divisor.
inline std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  UPoly q;
  Rational inv = b.lead().inverse();
  while (!a.is_zero() && a.degree() >= b.degree()) {
    auto t = UPoly::monomial(static_cast<std::size_t>(a.degree() - b.degree()), a.lead() * inv);
    q += t;
    a -= t * b;
  }
  return {q, a};
}

/// Monic gcd; gcd(0, 0) = 0.
inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

class Poly2 {
 public:
  Poly2() = default;
  Poly2(const Rational& c) {  // NOLINT
    if (!c.is_zero()) c_.emplace_back(c);
  }
  Poly2(int c) : Poly2(Rational(c)) {}  // NOLINT
  Poly2(const UPoly& p) {  // NOLINT: polynomials in v embed
    if (!p.is_zero()) c_.push_back(p);
  }
  explicit Poly2(std::vector<UPoly> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly2 u() { return Poly2(std::vector<UPoly>{UPoly(), UPoly(1)}); }
  static Poly2 v() { return Poly2(UPoly::x()); }
  static Poly2 u_power(std::size_t e, const UPoly& coeff) {
    std::vector<UPoly> v(e + 1);
    v[e] = coeff;
    return Poly2(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree_u() const { return static_cast<int>(c_.size()) - 1; }
  int degree_v() const {
    int d = -1;
    for (const auto& x : c_) d = std::max(d, x.degree());
    return d;
  }
  const std::vector<UPoly>& coeffs() const { return c_; }
  UPoly coeff_u(std::size_t e) const { return e < c_.size() ? c_[e] : UPoly(); }
  const UPoly& lead_u() const { return c_.back(); }
  /// Coefficient of the lex-leading monomial.
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back().lead(); }
  bool is_constant() const { return c_.size() <= 1 && degree_v() <= 0; }
  Rational constant_term() const { return c_.empty() ? Rational(0) : c_[0].coeff(0); }

  Poly2& operator+=(const Poly2& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly2& operator-=(const Poly2& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly2 operator-() const {
    Poly2 r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<UPoly> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly2(std::move(out));
  }
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.c_ == b.c_; }

  Poly2 d_du() const {
    std::vector<UPoly> out;
    for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(UPoly(Rational(static_cast<long>(i))) * c_[i]);
    return Poly2(std::move(out));
  }
  Poly2 d_dv() const {
    std::vector<UPoly> out;
    for (const auto& x : c_) out.push_back(x.derivative());
    return Poly2(std::move(out));
  }

  Rational eval(const Rational& u, const Rational& v) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * u + it->eval(v);
    return acc;
  }

  /// p(u, v) -> p(v + h, v), returned with h in the slot of u.
  Poly2 shift_u_by_v() const {
    Poly2 base = u() + v(), acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * base + Poly2(*it);
    return acc;
  }

  Poly2 scaled(const Rational& s) const {
    Poly2 r = *this;
    for (auto& x : r.c_) x = x * UPoly(s);
    r.trim();
    return r;
  }

  std::string to_string() const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<UPoly> c_;
};

inline bool is_zero(const UPoly& p) { return p.is_zero(); }
inline bool is_zero(const Poly2& p) { return p.is_zero(); }

inline std::string Poly2::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const auto& cv = c_[i].coeffs();
    for (std::size_t j = cv.size(); j-- > 0;) {
      Rational c = cv[j];
      if (c.is_zero()) continue;
      bool neg = c.sign() < 0;
      if (neg) c = -c;
      std::string mono;
      if (i > 0) mono += i == 1 ? "u" : "u^" + std::to_string(i);
      if (j > 0) mono += std::string(mono.empty() ? "" : "*") + (j == 1 ? "v" : "v^" + std::to_string(j));
      std::string term;
      if (mono.empty()) term = c.to_string();
      else if (c.is_one()) term = mono;
      else term = c.to_string() + "*" + mono;
      if (out.empty()) out = neg ? "-" + term : term;
      else out += (neg ? " - " : " + ") + term;
    }
  }
  return out;
}

/// Exact quotient a / b when b divides a, otherwise nullopt.
inline std::optional<Poly2> exact_div(Poly2 a, const Poly2& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  Poly2 q;
  while (!a.is_zero()) {
    if (a.degree_u() < b.degree_u()) return std::nullopt;
    auto [cq, cr] = divmod(a.lead_u(), b.lead_u());
    if (!cr.is_zero()) return std::nullopt;
    auto t = Poly2::u_power(static_cast<std::size_t>(a.degree_u() - b.degree_u()), cq);
    q += t;
    a -= t * b;
  }
  return q;
}

/// gcd over Q[v] of the u-coefficients.
inline UPoly content(const Poly2& p) {
  UPoly g;
  for (const auto& c : p.coeffs()) g = gcd(g, c);
  return g;
}

inline Poly2 primitive_part(const Poly2& p) {
  if (p.is_zero()) return p;
  auto q = exact_div(p, Poly2(content(p)));
  return *q;
}

/// Pseudo-remainder in u, up to a factor from Q[v].
inline Poly2 pseudo_remainder(Poly2 a, const Poly2& b) {
  Poly2 lc(b.lead_u());
  while (!a.is_zero() && a.degree_u() >= b.degree_u()) {
    auto shift = static_cast<std::size_t>(a.degree_u() - b.degree_u());
    a = lc * a - Poly2::u_power(shift, a.lead_u()) * b;
  }
  return a;
}

/// Makes the lex-leading coefficient 1.
inline Poly2 normalize_lead(const Poly2& p) {
  if (p.is_zero()) return p;
  return p.scaled(p.lead().inverse());
}

/// gcd via contents and the primitive remainder sequence, lex-leading coefficient 1.
inline Poly2 gcd(const Poly2& a, const Poly2& b) {
  if (a.is_zero()) return normalize_lead(b);
  if (b.is_zero()) return normalize_lead(a);
  UPoly c = gcd(content(a), content(b));
  Poly2 x = primitive_part(a), y = primitive_part(b);
  if (x.degree_u() < y.degree_u()) std::swap(x, y);
  while (!y.is_zero()) {
    Poly2 r = pseudo_remainder(x, y);
    x = std::move(y);
    y = primitive_part(r);
  }
  return normalize_lead(Poly2(c) * primitive_part(x));
}

}  // namespace brpois
