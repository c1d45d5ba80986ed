#pragma once

/// Exact rational numbers on top of GMP.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace brpois {

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Arbitrary precision rational, always in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : v_(v) {}  // NOLINT: implicit by intent, mirrors int literals
  Rational(long v) : v_(v) {}  // NOLINT
  Rational(long long v) : v_(static_cast<long>(v)) {}  // NOLINT
  Rational(long num, long den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  explicit Rational(const mpz_class& v) : v_(v) {}

  /// Parses "p", "-p" or "p/q" (whitespace around the slash is rejected).
  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    auto check_int = [](const std::string& part) {
      if (part.empty()) return false;
      std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
      if (i == part.size()) return false;
      for (; i < part.size(); ++i)
        if (part[i] < '0' || part[i] > '9') return false;
      return true;
    };
    auto strip_plus = [](std::string part) {
      if (!part.empty() && part[0] == '+') part.erase(0, 1);
      return part;
    };
    if (slash == std::string::npos) {
      if (!check_int(s)) throw std::invalid_argument("bad rational literal: " + s);
      return Rational(mpz_class(strip_plus(s)));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!check_int(num) || !check_int(den) || den[0] == '-' || den[0] == '+')
      throw std::invalid_argument("bad rational literal: " + s);
    mpz_class d(den);
    if (d == 0) throw DivisionByZero("rational literal with zero denominator");
    return Rational(mpq_class(mpz_class(strip_plus(num)), d));
  }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    return Rational(mpq_class(1) / v_);
  }

  /// Canonical "p/q" form, "p" when q = 1.
  std::string to_string() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero("division by zero");
    v_ /= o.v_;
    return *this;
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  mpq_class v_;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }

/// r^e for integer e (negative exponents invert).
inline Rational pow(const Rational& r, int e) {
  if (e < 0) return pow(r.inverse(), -e);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), r.numerator().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), r.denominator().get_mpz_t(), static_cast<unsigned long>(e));
  return Rational(mpq_class(num, den));
}

inline mpz_class factorial(unsigned long k) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), k);
  return out;
}

/// Exact square root when r is the square of a rational.
inline bool rational_sqrt(const Rational& r, Rational& out) {
  if (r.sign() < 0) return false;
  mpz_class n = r.numerator(), d = r.denominator();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  out = Rational(mpq_class(sn, sd));
  return true;
}

/// Appends "coeff*monomial" to a sum, folding unit coefficients and signs.
/// `coeff` is the printed coefficient, `monomial` may be empty.
inline void append_term(std::string& out, std::string coeff, const std::string& monomial) {
  bool simple = coeff.find_first_of("+ ") == std::string::npos;
  bool negative = simple && !coeff.empty() && coeff[0] == '-';
  if (negative) coeff.erase(0, 1);
  if (!simple) coeff = "(" + coeff + ")";
  std::string term = monomial.empty() ? coeff : coeff == "1" ? monomial : coeff + "*" + monomial;
  if (out.empty())
    out = (negative ? "-" : "") + term;
  else
    out += (negative ? " - " : " + ") + term;
}

}  // namespace brpois

template <>
struct std::hash<brpois::Rational> {
  std::size_t operator()(const brpois::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.to_string());
  }
};
