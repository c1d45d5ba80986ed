#pragma once

/// Rational functions in u, v over Q, kept in lowest terms with the
/// denominator's lex-leading coefficient equal to 1.
///
/// Text grammar (parse / to_string):
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := '-' unary | power
///   power  := atom ('^' integer)?
///   atom   := integer | 'u' | 'v' | name | '(' expr ')'
/// where `name` must be bound to a rational value, e.g. {"v1": 0}.

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>

#include "brpois/matrix.hpp"
#include "brpois/polynomial.hpp"

namespace brpois {

class NonRationalPrimitive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedIntegrand : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(const Rational& c) : num_(c), den_(1) {}  // NOLINT
  RationalFunction(int c) : RationalFunction(Rational(c)) {}  // NOLINT
  RationalFunction(const Poly2& p) : num_(p), den_(1) {}  // NOLINT
  RationalFunction(Poly2 num, Poly2 den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    normalize();
  }

  static RationalFunction u() { return Poly2::u(); }
  static RationalFunction v() { return Poly2::v(); }

  const Poly2& num() const { return num_; }
  const Poly2& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_constant() && b.den_.is_constant()) {
      RationalFunction r;
      r.num_ = a.num_ * b.num_;
      r.den_ = Poly2(1);
      return r;
    }
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DivisionByZero("rational function division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction d_dv() const {
    return {num_.d_dv() * den_ - num_ * den_.d_dv(), den_ * den_};
  }
  RationalFunction d_du() const {
    return {num_.d_du() * den_ - num_ * den_.d_du(), den_ * den_};
  }

  Rational eval_at(const Rational& u, const Rational& v) const {
    Rational d = den_.eval(u, v);
    if (d.is_zero()) throw DivisionByZero("rational function evaluated at a pole");
    return num_.eval(u, v) / d;
  }

  /// f(u, v) -> f(v + h, v) with h in the slot of u.
  RationalFunction shift_u_by_v() const { return {num_.shift_u_by_v(), den_.shift_u_by_v()}; }

  std::string to_string() const {
    if (den_ == Poly2(1)) return num_.to_string();
    auto wrap = [](const Poly2& p, bool allow_sign) {
      auto s = p.to_string();
      bool simple = s.find_first_of(" *") == std::string::npos && (allow_sign || s[0] != '-');
      return simple ? s : "(" + s + ")";
    };
    return wrap(num_, true) + "/" + wrap(den_, false);
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly2(1);
      return;
    }
    if (!den_.is_constant()) {
      Poly2 g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = *exact_div(num_, g);
        den_ = *exact_div(den_, g);
      }
    }
    Rational s = den_.lead().inverse();
    num_ = num_.scaled(s);
    den_ = den_.scaled(s);
  }

  Poly2 num_;
  Poly2 den_;
};

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }

inline RationalFunction pow(const RationalFunction& f, int e) {
  if (e < 0) return pow(RationalFunction(1) / f, -e);
  RationalFunction out(1), b = f;
  while (e) {
    if (e & 1) out *= b;
    b *= b;
    e >>= 1;
  }
  return out;
}

namespace detail {

class RfParser {
 public:
  RfParser(const std::string& s, const std::map<std::string, Rational>& bindings) : s_(s), b_(bindings) {}

  RationalFunction run() {
    auto r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("rational function parse error at " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RationalFunction expr() {
    auto r = term();
    for (;;) {
      if (eat('+')) r = r + term();
      else if (eat('-')) r = r - term();
      else return r;
    }
  }
  RationalFunction term() {
    auto r = unary();
    for (;;) {
      if (eat('*')) r = r * unary();
      else if (eat('/')) {
        auto d = unary();
        if (d.is_zero()) fail("division by zero");
        r = r / d;
      } else return r;
    }
  }
  RationalFunction unary() {
    if (eat('-')) return -unary();
    return power();
  }
  RationalFunction power() {
    auto base = atom();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      int e = std::stoi(s_.substr(start, pos_ - start));
      if (neg && base.is_zero()) fail("zero to a negative power");
      return pow(base, neg ? -e : e);
    }
    return base;
  }
  RationalFunction atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Rational(mpz_class(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      auto name = s_.substr(start, pos_ - start);
      if (name == "u") return RationalFunction::u();
      if (name == "v") return RationalFunction::v();
      auto it = b_.find(name);
      if (it == b_.end()) fail("unbound name '" + name + "'");
      return it->second;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const std::map<std::string, Rational>& b_;
  std::size_t pos_ = 0;
};

/// Primitive of A/D in v with deg A < deg D, as B/D_minus, or nullopt when a
/// logarithmic part remains. Uses the Horowitz-Ostrogradsky ansatz
///   A = B' D_star - B H + C D_minus,  D_minus = gcd(D, D'), D_star = D / D_minus,
///   H = D_star D_minus' / D_minus,
/// and requires C = 0.
inline std::optional<std::pair<UPoly, UPoly>> proper_primitive(const UPoly& a, const UPoly& d) {
  if (a.is_zero()) return std::make_pair(UPoly(), UPoly(1));
  UPoly dm = gcd(d, d.derivative());
  if (dm.is_zero()) dm = UPoly(1);
  UPoly ds = divmod(d, dm).first;
  UPoly h = divmod(ds * dm.derivative(), dm).first;
  auto nb = static_cast<std::size_t>(std::max(dm.degree(), 0));
  auto nc = static_cast<std::size_t>(ds.degree());
  auto nd = static_cast<std::size_t>(d.degree());
  // Columns: B coefficients b_0..b_{nb-1}, then C coefficients c_0..c_{nc-1}.
  QMatrix sys(nd, nb + nc), rhs(nd, 1);
  for (std::size_t i = 0; i < nb; ++i) {
    UPoly bi = UPoly::monomial(i, 1);
    UPoly col = bi.derivative() * ds - bi * h;
    for (std::size_t k = 0; k < nd; ++k) sys(k, i) = col.coeff(k);
  }
  for (std::size_t i = 0; i < nc; ++i) {
    UPoly col = UPoly::monomial(i, 1) * dm;
    for (std::size_t k = 0; k < nd; ++k) sys(k, nb + i) = col.coeff(k);
  }
  for (std::size_t k = 0; k < nd; ++k) rhs(k, 0) = a.coeff(k);
  auto sol = solve(sys, rhs);
  if (!sol) throw std::logic_error("antiderivative: Horowitz-Ostrogradsky system inconsistent");
  for (std::size_t i = 0; i < nc; ++i)
    if (!(*sol)(nb + i, 0).is_zero()) return std::nullopt;
  std::vector<Rational> b(nb);
  for (std::size_t i = 0; i < nb; ++i) b[i] = (*sol)(i, 0);
  return std::make_pair(UPoly(std::move(b)), dm);
}

}  // namespace detail

inline RationalFunction parse_rational_function(const std::string& text,
                                                const std::map<std::string, Rational>& bindings = {}) {
  return detail::RfParser(text, bindings).run();
}

/// A primitive in v. The polynomial part is integrated with zero constant
/// term; the proper part has no free constant. Denominators must not depend on u.
inline RationalFunction antiderivative_v(const RationalFunction& f) {
  if (f.is_zero()) return f;
  if (f.den().degree_u() > 0)
    throw UnsupportedIntegrand("antiderivative_v: denominator depends on u: " + f.to_string());
  const UPoly& d = f.den().coeff_u(0);
  RationalFunction out;
  for (std::size_t i = 0; i < f.num().coeffs().size(); ++i) {
    auto [q, rem] = divmod(f.num().coeff_u(i), d);
    std::vector<Rational> qi(q.coeffs().size() + 1);
    for (std::size_t k = 0; k < q.coeffs().size(); ++k)
      qi[k + 1] = q.coeffs()[k] / Rational(static_cast<long>(k + 1));
    auto proper = detail::proper_primitive(rem, d);
    if (!proper) throw NonRationalPrimitive("primitive of " + f.to_string() + " has a logarithmic part");
    RationalFunction part = RationalFunction(Poly2(UPoly(std::move(qi)))) +
                            RationalFunction(Poly2(proper->first), Poly2(proper->second));
    out += part * RationalFunction(Poly2::u_power(i, UPoly(1)));
  }
  return out;
}

}  // namespace brpois
