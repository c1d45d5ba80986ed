#pragma once

// Shared helpers for the test suites: a small seeded generator and naive
// index-loop oracles that do not go through the library's own kernels.

#include <cstdint>
#include <vector>

#include "brpois/brpois.hpp"

namespace testing_support {

using brpois::QMatrix;
using brpois::Rational;

// splitmix64; stable across platforms and standard libraries.
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  Rational rational(long height = 9) {
    long num = range(-height, height), den = range(1, height);
    return Rational(num, den);
  }
  Rational nonzero(long height = 9) {
    Rational x;
    while (x.is_zero()) x = rational(height);
    return x;
  }
  QMatrix matrix(std::size_t r, std::size_t c, long height = 9) {
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rational(height);
    return m;
  }
};

inline Rational fact(int k) {
  Rational out(1);
  for (int i = 2; i <= k; ++i) out *= Rational(i);
  return out;
}

// Rising factorial (a)_k = a (a+1) ... (a+k-1).
inline Rational rising(int a, int k) {
  Rational out(1);
  for (int i = 0; i < k; ++i) out *= Rational(a + i);
  return out;
}

// Entry <out| M |in> with row = input, column = output.
inline Rational apply(const QMatrix& m, std::size_t in, std::size_t out) { return m(in, out); }

// Naive matrix product by index loops.
inline QMatrix naive_mul(const QMatrix& a, const QMatrix& b) {
  QMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Rational acc;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

// Operator on V^{(x)3} acting by `two` on legs (p, p+1), built from digits.
inline QMatrix naive_embed(const QMatrix& two, std::size_t n, std::size_t p) {
  std::size_t N = n * n * n;
  QMatrix out(N, N);
  for (std::size_t in = 0; in < N; ++in)
    for (std::size_t o = 0; o < N; ++o) {
      std::size_t d[3] = {in / (n * n), (in / n) % n, in % n};
      std::size_t e[3] = {o / (n * n), (o / n) % n, o % n};
      std::size_t other = p == 1 ? 2 : 0;
      if (d[other] != e[other]) continue;
      std::size_t a = p - 1, b = p;
      out(in, o) = two(d[a] * n + d[b], e[a] * n + e[b]);
    }
  return out;
}

}  // namespace testing_support
