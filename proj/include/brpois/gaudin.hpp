#pragma once

/// Gaudin-type models: Hamiltonians from the pole expansion of Tr L(u)^2 and
/// involutivity of the spectral traces Tr L(u)^k.

#include <optional>
#include <string>
#include <vector>

#include "brpois/fnpoly.hpp"
#include "brpois/global.hpp"

namespace brpois {

/// A(p) as the generator matrix at site p+1.
inline MatrixOverAlgebra<Rational> residue_matrix(std::size_t n, std::size_t p, const ColorPtr& color = nullptr) {
  return generator_matrix<Rational>(n, 0, static_cast<unsigned>(p + 1), color);
}

/// H(p) = Tr C A(p) + 2 sum_{j != p} Tr A(p)A(j) / (v_j - v_p).
inline std::vector<QElement> gaudin_hamiltonians(const GaudinConfig& cfg) {
  validate(cfg);
  std::size_t m = cfg.sites();
  std::vector<MatrixOverAlgebra<Rational>> a;
  for (std::size_t p = 0; p < m; ++p) a.push_back(residue_matrix(cfg.n, p));
  std::vector<QElement> out(m);
  for (std::size_t p = 0; p < m; ++p) {
    if (cfg.c_matrix) out[p] += trace(*cfg.c_matrix * a[p]);
    for (std::size_t j = 0; j < m; ++j)
      if (j != p) out[p] += (Rational(2) / (cfg.poles[j] - cfg.poles[p])) * trace(a[p] * a[j]);
  }
  return out;
}

/// H(p) = sum_{j != p} Tr^R(A(p) A(j)) / (v_j - v_p), products in the colored algebra.
inline std::vector<QElement> braided_gaudin_hamiltonians(const GaudinConfig& cfg, const Braiding& r,
                                                         const ColorPtr& color) {
  validate(cfg);
  if (cfg.n != r.dim()) throw DimensionMismatch("braiding dimension differs from n");
  const QMatrix& c = r.skew().c_op;
  std::size_t m = cfg.sites();
  std::vector<MatrixOverAlgebra<Rational>> a;
  for (std::size_t p = 0; p < m; ++p) a.push_back(residue_matrix(cfg.n, p, color));
  std::vector<QElement> out;
  for (std::size_t p = 0; p < m; ++p) {
    auto h = QElement::with_color(color);
    for (std::size_t j = 0; j < m; ++j)
      if (j != p) h += (Rational(1) / (cfg.poles[j] - cfg.poles[p])) * r_trace(c, mat_odot(a[p], a[j]));
    out.push_back(std::move(h));
  }
  return out;
}

inline CheckReport check_hamiltonian_commutativity(const LinearBracket& sites, const std::vector<QElement>& h,
                                                   std::string name = "gaudin", nlohmann::json params = {}) {
  return timed_check(std::move(name), std::move(params), [&]() -> std::optional<std::string> {
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = i + 1; j < h.size(); ++j) {
        auto s = bracket_extend(sites, h[i], h[j]);
        if (!s.is_zero())
          return "{H(" + std::to_string(i + 1) + "), H(" + std::to_string(j + 1) + ")} = " + clip(s.to_string());
      }
    return std::nullopt;
  });
}

/// {Tr L(u)^k, Tr L(v)^l} = 0 for L(w) = C + sum_p A(p)/(v_p - w). Traces
/// are R-traces when `c_op` is given. Coefficients are polynomials in the
/// symbols x_p = 1/(v_p - u) (id 2p) and y_p = 1/(v_p - v) (id 2p+1), and
/// are tested for zero in Q(u,v).
inline CheckReport check_global_trace_involution(const GaudinConfig& cfg, const LinearBracket& sites,
                                                 unsigned pow_max, const std::optional<QMatrix>& c_op = std::nullopt,
                                                 nlohmann::json params = {}) {
  if (cfg.r != 1) throw std::invalid_argument("global trace involution is stated for r = 1");
  return timed_check("trace-involution-global", std::move(params), [&]() -> std::optional<std::string> {
    validate(cfg);
    using FElement = AlgebraElement<FnPoly>;
    std::size_t n = cfg.n, m = cfg.sites();
    const auto& color = sites.color();
    auto spectral = [&](std::uint16_t offset) {
      MatrixOverAlgebra<FnPoly> l(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          auto e = FElement::with_color(color);
          if (cfg.c_matrix && !(*cfg.c_matrix)(i, j).is_zero()) e += FElement(FnPoly((*cfg.c_matrix)(i, j)));
          for (std::size_t p = 0; p < m; ++p) {
            auto f = FnPoly::symbol(static_cast<std::uint16_t>(2 * p + offset));
            e += FElement::generator(make_gen(static_cast<unsigned>(i), static_cast<unsigned>(j), 0,
                                              static_cast<unsigned>(p + 1)),
                                     color, f);
          }
          l(i, j) = e;
        }
      return l;
    };
    auto traces = [&](const MatrixOverAlgebra<FnPoly>& l) {
      std::vector<FElement> out;
      auto p = MatrixOverAlgebra<FnPoly>::identity(n);
      for (unsigned k = 0; k <= pow_max; ++k) {
        out.push_back(c_op ? r_trace(*c_op, p) : trace(p));
        p = p * l;
      }
      return out;
    };
    auto tu = traces(spectral(0)), tv = traces(spectral(1));
    auto image = [&](std::uint16_t id) {
      const Rational& pole = cfg.poles[id / 2];
      auto var = id % 2 == 0 ? RationalFunction::u() : RationalFunction::v();
      return RationalFunction(1) / (RationalFunction(pole) - var);
    };
    auto name = [](std::uint16_t id) {
      return std::string(id % 2 == 0 ? "x" : "y") + std::to_string(id / 2 + 1);
    };
    for (unsigned k = 1; k <= pow_max; ++k)
      for (unsigned l = 1; l <= pow_max; ++l) {
        auto s = bracket_extend(sites, tu[k], tv[l]);
        for (const auto& [mono, f] : s.terms()) {
          auto rf = f.to_rational_function(image);
          if (!rf.is_zero()) {
            std::string mname;
            for (Gen g : mono) mname += (mname.empty() ? "" : "*") + gen_name(g);
            return "k=" + std::to_string(k) + " l=" + std::to_string(l) + ": coefficient of " + mname + " is " +
                   clip(f.to_string(name)) + " = " + clip(rf.to_string());
          }
        }
      }
    return std::nullopt;
  });
}

}  // namespace brpois
