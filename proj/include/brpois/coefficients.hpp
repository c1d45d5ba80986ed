#pragma once

/// Closed-form coefficient families for the order-r local brackets.
///
///   alpha_r(k, l) = (k+r-1)! (l+r-1)! / ((k+l+2r-1)! (r-1)!)
///   beta_r(k, l, m) = alpha_r(k, l) * alpha_r(k+l+r, m)
///
/// alpha_r is symmetric in (k, l) and beta_r is invariant under cyclic
/// permutations of (k, l, m); the latter is what makes the local brackets
/// satisfy Jacobi.

#include <functional>
#include <stdexcept>

#include "brpois/rational.hpp"

namespace brpois {

/// Derivative-shift order r >= 1 of a local bracket family.
class CoeffSpec {
 public:
  explicit CoeffSpec(int r) : r_(r) {
    if (r < 1) throw std::invalid_argument("derivative-shift order must be >= 1");
  }
  int r() const { return r_; }

 private:
  int r_;
};

inline Rational alpha_coeff(int r, int k, int l) {
  if (r < 1) throw std::invalid_argument("alpha_coeff: r must be >= 1");
  if (k < 0 || l < 0) throw std::invalid_argument("alpha_coeff: k, l must be >= 0");
  mpz_class num = factorial(k + r - 1) * factorial(l + r - 1);
  mpz_class den = factorial(k + l + 2 * r - 1) * factorial(r - 1);
  return Rational(mpq_class(num, den));
}

inline Rational beta_coeff(int r, int k, int l, int m) {
  return alpha_coeff(r, k, l) * alpha_coeff(r, k + l + r, m);
}

/// Coefficient table used by local bracket engines. The default table is
/// alpha_coeff(r, ., .); tests swap in perturbed tables as negative controls.
using CoefficientTable = std::function<Rational(int k, int l)>;

inline CoefficientTable alpha_table(int r) {
  CoeffSpec spec(r);
  return [r](int k, int l) { return alpha_coeff(r, k, l); };
}

/// The label-only extension {L^(k)_1, L^(l)_2} = [L^(k+l)_1, P]: coefficient 1
/// and no derivative shift. Jacobi holds, derivation compatibility does not.
inline CoefficientTable unit_table() {
  return [](int, int) { return Rational(1); };
}

}  // namespace brpois
