// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic only.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace brpois;
using testing_support::fact;
using testing_support::Rng;

namespace {

// Collects sub-results; the first failure is kept as the reason.
struct Outcome {
  bool ok = true;
  std::string reason;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      reason = what;
    }
  }
  void require(const CheckReport& rep, const std::string& what) {
    require(rep.pass, what + " [" + rep.check + "]" + (rep.witness ? ": " + clip(*rep.witness, 160) : ""));
  }
  void require_failure(const CheckReport& rep, const std::string& what) {
    require(!rep.pass, what + " unexpectedly passed");
    require(rep.pass || (rep.witness && !rep.witness->empty()), what + " failed without a witness");
  }
};

QMatrix diag(std::vector<Rational> d) {
  QMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Braiding twist2() { return make_diagonal_twist(uniform_twist_factors(2, Rational(2))); }

QMatrix twist3_factors() {
  QMatrix f(3, 3);
  Rational v[3][3] = {{1, 2, Rational(1, 4)}, {Rational(1, 2), 1, 3}, {4, Rational(1, 3), 1}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) f(i, j) = v[i][j];
  return f;
}

GaudinConfig config(std::size_t n, std::vector<Rational> poles, int r) {
  GaudinConfig c;
  c.n = n;
  c.poles = std::move(poles);
  c.r = r;
  return c;
}

// 1. Coefficient identities against a factorial oracle.
Outcome coefficients() {
  Outcome o;
  for (int r = 1; r <= 4; ++r) {
    for (int k = 0; k <= 10; ++k)
      for (int l = 0; l <= 10; ++l) {
        Rational a = alpha_coeff(r, k, l);
        o.require(a == alpha_coeff(r, l, k), "alpha symmetry");
        o.require(a == fact(k + r - 1) * fact(l + r - 1) / (fact(k + l + 2 * r - 1) * fact(r - 1)), "alpha oracle");
      }
    for (int k = 0; k <= 8; ++k)
      for (int l = 0; l <= 8; ++l)
        for (int m = 0; m <= 8; ++m) {
          Rational b = beta_coeff(r, k, l, m);
          o.require(b == beta_coeff(r, l, m, k) && b == beta_coeff(r, m, k, l), "beta cyclic invariance");
          o.require(b == fact(k + r - 1) * fact(l + r - 1) * fact(m + r - 1) /
                             (fact(k + l + m + 3 * r - 1) * fact(r - 1) * fact(r - 1)),
                    "beta oracle");
        }
  }
  for (int k = 0; k <= 20; ++k)
    o.require(alpha_coeff(2, k, 0) / fact(k) == fact(k + 2).inverse() - Rational(2) * fact(k + 3).inverse(),
              "order-2 scalar identity at k=" + std::to_string(k));
  return o;
}

// 2. Global forms expand to the local families.
Outcome taylor() {
  Outcome o;
  for (const auto& b : {make_flip(2), make_flip(3), twist2()}) {
    o.require(check_taylor_equivalence(b, GlobalKind::order1, alpha_table(1), 6), "order-1 global form");
    o.require(check_taylor_equivalence(b, GlobalKind::order2, alpha_table(2), 6), "order-2 global form");
  }
  return o;
}

// 3. Jacobi for the local and braided families.
Outcome jacobi() {
  Outcome o;
  auto gens = generators_up_to(2, 2);
  for (int r = 1; r <= 3; ++r) o.require(check_jacobi(local_gaudin(2, r), gens), "local r=" + std::to_string(r));
  auto t = twist2();
  auto color = share(color_table_for(t));
  for (int r = 1; r <= 2; ++r) o.require(check_jacobi(braided_local(t, r, color), gens), "braided r=" + std::to_string(r));
  return o;
}

// 4. Involutivity of trace powers.
Outcome trace_involution() {
  Outcome o;
  for (int r = 1; r <= 2; ++r)
    for (std::size_t n : {2u, 3u}) {
      o.require(check_trace_involution(local_gaudin(n, r), 3, 0, 0),
                "r=" + std::to_string(r) + " n=" + std::to_string(n));
      o.require(check_trace_involution(local_gaudin(n, r), 2, 1, 2),
                "derivative traces r=" + std::to_string(r) + " n=" + std::to_string(n));
    }
  auto t = twist2();
  o.require(check_trace_involution(braided_local(t, 1, share(color_table_for(t))), 2, 0, 0, t.skew().c_op),
            "braided R-traces");
  return o;
}

// 5. Gaudin model with three sites.
Outcome gaudin() {
  Outcome o;
  auto cfg = config(2, {Rational(0), Rational(1), Rational(2)}, 1);
  cfg.c_matrix = diag({Rational(4, 3), Rational(-11, 5)});
  auto sites = lie_poisson_sites(2, 3);
  o.require(check_hamiltonian_commutativity(sites, gaudin_hamiltonians(cfg)), "Hamiltonians commute");
  for (int r = 1; r <= 2; ++r) {
    auto spec = config(2, cfg.poles, r);
    spec.include_constant_c = true;
    auto reps = specialization_reports(spec, make_flip(2), sites);
    o.require(reps.size() == 3, "three specialization sub-checks");
    for (const auto& rep : reps) o.require(rep, "specialization r=" + std::to_string(r));
  }
  o.require(check_global_trace_involution(cfg, sites, 3), "global trace involution");
  return o;
}

// 6. Braided Gaudin model for the diagonal twist.
Outcome braided_gaudin() {
  Outcome o;
  auto t = twist2();
  auto color = share(color_table_for(t));
  for (std::size_t sites : {2u, 3u}) {
    std::vector<Rational> poles;
    for (std::size_t p = 0; p < sites; ++p) poles.push_back(Rational(static_cast<long>(p)));
    auto cfg = config(2, poles, 1);
    auto br = braided_sites(t, sites, color);
    for (const auto& rep : specialization_reports(cfg, t, br)) o.require(rep, "specialization N=" + std::to_string(sites));
    o.require(check_hamiltonian_commutativity(br, braided_gaudin_hamiltonians(cfg, t, color), "braided-gaudin"),
              "Hamiltonians N=" + std::to_string(sites));
  }
  return o;
}

// 7. Braidings, skew-inverse and R-trace identities.
Outcome toolkit() {
  Outcome o;
  std::vector<Braiding> inv{make_flip(2), make_flip(3), twist2(), make_diagonal_twist(twist3_factors())};
  std::vector<Braiding> hecke{make_dj_hecke(2, Rational(2)), make_dj_hecke(3, Rational(2))};
  for (const auto& b : inv) {
    auto rep = analyze(b.matrix());
    o.require(rep.ybe && rep.classification.kind == SymmetryKind::involutive, "involutive preset");
  }
  for (const auto& b : hecke) {
    o.require(analyze(b.matrix()).ybe, "Hecke YBE");
    QMatrix r = b.matrix().matrix(), id = QMatrix::identity(r.rows());
    o.require(((r - scale(Rational(2), id)) * (r + scale(Rational(1, 2), id))).is_zero_matrix(), "Hecke identity");
  }
  auto all = inv;
  all.insert(all.end(), hecke.begin(), hecke.end());
  for (const auto& b : all) {
    std::size_t n = b.dim();
    const auto& s = b.skew();
    QMatrix r = b.matrix().matrix(), psi = s.psi.matrix(), p = flip(n).matrix();
    auto r12 = embed_leg(r, n, 1, 3), r23 = embed_leg(r, n, 2, 3);
    auto p12 = embed_leg(psi, n, 1, 3), p23 = embed_leg(psi, n, 2, 3);
    o.require(partial_trace(r12 * p23, n, 3, 2) == p, "Tr_2 R_12 Psi_23 = P_13");
    o.require(partial_trace(p12 * r23, n, 3, 2) == p, "Tr_2 Psi_12 R_23 = P_13");
    o.require(r_trace_leg(s.c_op, r, 2, 2) == QMatrix::identity(n), "Tr^R_2 R_12 = I");
    o.require(check_rtrace_conjugation(b, 5, 2024), "R-trace conjugation invariance");
  }
  for (const auto& b : {twist2(), make_diagonal_twist(twist3_factors())})
    o.require(check_rtrace_cyclicity(b, share(color_table_for(b)), 2), "R-trace cyclicity");
  return o;
}

// 8. R_W against Q.
Outcome symmetric_algebra() {
  Outcome o;
  for (const auto& b : {make_flip(2), make_flip(3), twist2(), make_diagonal_twist(twist3_factors())}) {
    auto w = rw_and_q(b, extend_to_dual(b, b.skew()));
    o.require(w.rw == w.q, "R_W = Q");
    o.require(w.rw * w.rw == QMatrix::identity(w.rw.rows()), "R_W^2 = I");
  }
  for (const auto& b : {make_dj_hecke(2, Rational(2)), make_dj_hecke(3, Rational(2))}) {
    auto w = rw_and_q(b, extend_to_dual(b, b.skew()));
    std::size_t wd = b.dim() * b.dim();
    o.require(analyze(LegOperator(wd, 2, w.rw)).ybe, "Hecke R_W satisfies YBE");
    auto c = classify(w.rw);
    o.require(c.kind == SymmetryKind::general && !c.quadratic, "Hecke R_W is not a symmetry");
  }
  return o;
}

// 9. Reflection equation algebras.
Outcome re_algebra() {
  Outcome o;
  auto dj = make_dj_hecke(2, Rational(2));
  o.require(check_change_map(dj, 1), "change map");
  for (const auto& b : {make_flip(2), twist2(), make_diagonal_twist(twist3_factors())})
    o.require(spans_equal(re_relations(b, 0), symmetric_relations(b)), "RE(0) = Im(I - R_W), involutive");
  o.require(!spans_equal(re_relations(dj, 0), symmetric_relations(dj)), "RE(0) != Im(I - R_W) for Hecke");
  o.require(check_coproduct(make_flip(2), re_relations(make_flip(2), 1)), "coproduct, flip");
  auto t = twist2();
  o.require(check_coproduct(t, rea_relations(t, 1, 1)), "coproduct, twist REA");
  o.require(check_coproduct(dj, re_relations(dj, 1)), "coproduct, Hecke");
  std::optional<Rational> scalar;
  for (const auto& b : {make_flip(2), twist2(), dj, make_dj_hecke(3, Rational(2))}) {
    auto d = braided_lie_constants(b);
    for (const auto& rep : d.checks) o.require(rep, "braided Lie constants");
    o.require(d.scalar.has_value(), "cross-check scalar present");
    if (d.scalar) {
      if (!scalar) scalar = d.scalar;
      o.require(*scalar == *d.scalar, "cross-check scalar consistent across braidings");
    }
  }
  return o;
}

// 10. Negative controls, each with a witness.
Outcome negatives() {
  Outcome o;
  o.require_failure(check_derivation_compatibility(lie_poisson_current(2), generators_up_to(2, 2)),
                    "derivation compatibility of the Lie-Poisson current bracket");
  auto bad = [](int k, int l) { return k == 2 ? alpha_coeff(1, k, l) + Rational(1, 7) : alpha_coeff(1, k, l); };
  o.require_failure(check_taylor_equivalence(make_flip(2), GlobalKind::order1, bad, 6), "perturbed table");
  auto cfg = config(2, {Rational(0), Rational(1)}, 1);
  auto sites = lie_poisson_sites(2, 2);
  auto w = specialization_witness(cfg, make_flip(2), sites, 2);
  o.require(w.has_value() && !w->empty(), "wrong exponent 2 for r=1 accepted");
  auto cfg2 = config(2, {Rational(0), Rational(1)}, 2);
  auto w2 = specialization_witness(cfg2, make_flip(2), sites, 3);
  o.require(w2.has_value() && !w2->empty(), "wrong exponent 3 for r=2 accepted");
  auto reps = specialization_reports(cfg, make_flip(2), sites);
  o.require(reps.size() == 3 && reps[2].check == "specialization-only-if" && reps[2].pass, "only-if sub-check");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {1, "coefficient identities", coefficients},
      {2, "Taylor equivalence of global and local forms", taylor},
      {3, "Jacobi identity, local and braided families", jacobi},
      {4, "trace involution", trace_involution},
      {5, "Gaudin model, three sites", gaudin},
      {6, "braided Gaudin model", braided_gaudin},
      {7, "braiding toolkit and R-trace", toolkit},
      {8, "R_W versus Q", symmetric_algebra},
      {9, "reflection equation algebras", re_algebra},
      {10, "negative controls", negatives},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.reason = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << ms << " ms)";
    if (!o.ok) std::cout << " | " << o.reason;
    std::cout << std::endl;
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
