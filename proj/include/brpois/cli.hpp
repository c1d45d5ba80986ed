#pragma once

/// Command-line front end: `analyze`, `skew-inverse` and `verify <suite>`.
/// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brpois/gaudin.hpp"
#include "brpois/realg.hpp"

namespace brpois::cli {

struct Options {
  std::size_t n = 2;
  std::size_t sites = 0;
  std::string poles;
  int r = 1;
  std::string q = "2";
  std::string hbar = "1";
  std::string braiding_file;
  std::string preset;
  std::string twist_file;
  std::string bracket = "local";
  unsigned pow_max = 2;
  unsigned der_max = 2;
  int degree_bound = 0;
  std::uint64_t seed = 1;
  std::string format = "text";
  bool classical_sign = false;
  std::string suite;
};

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

/// The operator named by the options, before validation.
inline LegOperator operator_from(const Options& o) {
  if (!o.braiding_file.empty()) {
    auto j = load_json(o.braiding_file);
    if (!j.contains("legs")) j["legs"] = 2;
    auto op = leg_operator_from_json(j);
    if (op.legs() != 2) throw InputError("a braiding acts on two legs");
    return op;
  }
  if (!o.twist_file.empty()) {
    auto j = load_json(o.twist_file);
    return make_diagonal_twist(qmatrix_from_json(j.is_object() ? j.at("factors") : j)).matrix();
  }
  std::string p = o.preset.empty() ? "flip" : o.preset;
  if (p == "flip") return flip(o.n);
  if (p == "diag-twist") return make_diagonal_twist(uniform_twist_factors(o.n, Rational::parse(o.q))).matrix();
  if (p == "dj-hecke") return make_dj_hecke(o.n, Rational::parse(o.q)).matrix();
  throw InputError("unknown preset " + p);
}

inline Braiding braiding_from(const Options& o) { return make_custom(operator_from(o)); }

inline bool uses_braiding(const Options& o) {
  return !o.preset.empty() || !o.braiding_file.empty() || !o.twist_file.empty();
}

inline std::vector<Rational> poles_from(const Options& o) {
  std::vector<Rational> out;
  if (!o.poles.empty()) {
    std::stringstream ss(o.poles);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
    if (o.sites != 0 && o.sites != out.size()) throw InputError("--sites disagrees with the number of --poles");
  } else {
    for (std::size_t p = 0; p < (o.sites == 0 ? 2 : o.sites); ++p) out.push_back(Rational(static_cast<long>(p)));
  }
  if (out.empty()) throw InputError("at least one pole is needed");
  return out;
}

/// A diagonal constant matrix with distinct nonzero entries drawn from the seed.
inline QMatrix generic_diagonal(std::size_t n, std::uint64_t seed) {
  // raw engine output only: distributions differ between standard libraries
  std::mt19937_64 gen(seed);
  auto draw = [&gen](long lo, long hi) { return lo + static_cast<long>(gen() % static_cast<std::uint64_t>(hi - lo + 1)); };
  QMatrix c(n, n);
  std::vector<Rational> used;
  for (std::size_t i = 0; i < n; ++i) {
    Rational x;
    do x = Rational(draw(1, 29) * (gen() % 2 == 0 ? 1 : -1), draw(1, 7));
    while (std::find(used.begin(), used.end(), x) != used.end());
    used.push_back(x);
    c(i, i) = x;
  }
  return c;
}

inline nlohmann::json base_params(const Options& o) {
  nlohmann::json p{{"n", o.n}};
  if (uses_braiding(o))
    p["braiding"] = !o.braiding_file.empty() ? o.braiding_file
                    : !o.twist_file.empty()  ? o.twist_file
                                             : o.preset;
  if (o.classical_sign) p["sign"] = "classical";
  return p;
}

/// A named check that is expected to fail: passes when the inner check fails,
/// and keeps the inner witness as evidence.
inline CheckReport expect_failure(std::string name, CheckReport inner) {
  CheckReport out;
  out.check = std::move(name);
  out.params = inner.params;
  out.params["negated"] = inner.check;
  out.elapsed_ms = inner.elapsed_ms;
  out.pass = !inner.pass;
  if (inner.witness) out.params["counterexample"] = *inner.witness;
  if (inner.pass) out.witness = inner.check + " unexpectedly passed";
  return out;
}

inline ColorPtr color_for(const Braiding& b) { return share(color_table_for(b)); }

inline std::vector<CheckReport> suite_jacobi(const Options& o) {
  auto params = base_params(o);
  params["r"] = o.r;
  params["bracket"] = o.bracket;
  params["der_max"] = o.der_max;
  std::vector<Gen> gens = generators_up_to(o.n, o.der_max);
  std::optional<LinearBracket> br;
  bool compatible = true;
  if (o.bracket == "local") {
    br = local_gaudin(o.n, o.r);
  } else if (o.bracket == "braided") {
    auto b = braiding_from(o);
    br = braided_local(b, o.r, color_for(b));
    gens = generators_up_to(b.dim(), o.der_max);
  } else if (o.bracket == "lie-poisson") {
    br = lie_poisson_current(o.n);
    compatible = false;
  } else {
    throw InputError("unknown bracket " + o.bracket);
  }
  if (o.classical_sign) br = br->negated();
  std::vector<CheckReport> out{check_jacobi(*br, gens, params), check_antisymmetry(*br, gens, params)};
  if (compatible) out.push_back(check_derivation_compatibility(*br, gens, params));
  return out;
}

inline std::vector<CheckReport> suite_trace_involution(const Options& o) {
  auto params = base_params(o);
  params["r"] = o.r;
  params["pow_max"] = o.pow_max;
  params["der_max"] = o.der_max;
  if (uses_braiding(o)) {
    auto b = braiding_from(o);
    params["n"] = b.dim();
    auto br = braided_local(b, o.r, color_for(b));
    if (o.classical_sign) br = br.negated();
    return {check_trace_involution(br, o.pow_max, 0, o.der_max, b.skew().c_op, params)};
  }
  auto br = local_gaudin(o.n, o.r);
  if (o.classical_sign) br = br.negated();
  return {check_trace_involution(br, o.pow_max, 0, o.der_max, std::nullopt, params)};
}

inline std::vector<CheckReport> suite_gaudin(const Options& o) {
  GaudinConfig cfg;
  cfg.n = o.n;
  cfg.poles = poles_from(o);
  cfg.r = o.r;
  cfg.c_matrix = generic_diagonal(o.n, o.seed);
  validate(cfg);
  auto params = base_params(o);
  params["sites"] = cfg.sites();
  params["r"] = o.r;
  nlohmann::json poles = nlohmann::json::array();
  for (const auto& p : cfg.poles) poles.push_back(p.to_string());
  params["poles"] = poles;
  auto sites = lie_poisson_sites(o.n, cfg.sites());
  if (o.classical_sign) sites = sites.negated();
  auto cparams = params;
  cparams["C"] = to_json(*cfg.c_matrix);
  std::vector<CheckReport> out{check_hamiltonian_commutativity(sites, gaudin_hamiltonians(cfg), "gaudin", cparams)};
  GaudinConfig spec = cfg;
  spec.include_constant_c = true;
  spec.c_matrix.reset();
  for (auto& rep : specialization_reports(spec, make_flip(o.n), sites, params)) out.push_back(rep);
  if (o.r == 1) {
    auto gp = cparams;
    gp["pow_max"] = o.pow_max;
    out.push_back(check_global_trace_involution(cfg, sites, o.pow_max, std::nullopt, gp));
  }
  return out;
}

inline std::vector<CheckReport> suite_braided_gaudin(const Options& o) {
  Options opt = o;
  if (!uses_braiding(opt)) opt.preset = "diag-twist";
  auto b = braiding_from(opt);
  auto color = color_for(b);
  GaudinConfig cfg;
  cfg.n = b.dim();
  cfg.poles = poles_from(opt);
  cfg.r = opt.r;
  validate(cfg);
  auto params = base_params(opt);
  params["n"] = b.dim();
  params["sites"] = cfg.sites();
  params["r"] = opt.r;
  auto sites = braided_sites(b, cfg.sites(), color);
  std::vector<CheckReport> out{
      check_hamiltonian_commutativity(sites, braided_gaudin_hamiltonians(cfg, b, color), "braided-gaudin", params)};
  for (auto& rep : specialization_reports(cfg, b, sites, params)) out.push_back(rep);
  if (opt.r == 1) {
    auto gp = params;
    gp["pow_max"] = opt.pow_max;
    out.push_back(check_global_trace_involution(cfg, sites, opt.pow_max, b.skew().c_op, gp));
  }
  return out;
}

inline std::vector<CheckReport> suite_re_iso(const Options& o) {
  auto b = braiding_from(o);
  auto params = base_params(o);
  params["n"] = b.dim();
  params["kind"] = to_string(b.kind());
  std::vector<CheckReport> out;
  bool hecke = b.is_hecke();
  out.push_back(timed_check("re-symmetric-span", params, [&]() -> std::optional<std::string> {
    bool equal = spans_equal(re_relations(b, 0), symmetric_relations(b));
    if (hecke && equal) return std::string("Hecke braiding: RE(hbar=0) unexpectedly coincides with Im(I - R_W)");
    if (!hecke && !equal) return std::string("RE(hbar=0) and Im(I - R_W) span different subspaces");
    return std::nullopt;
  }));
  Rational hbar = Rational::parse(o.hbar);
  if (hecke) {
    auto p = params;
    p["hbar"] = hbar.to_string();
    out.push_back(check_change_map(b, hbar, p));
  }
  auto lie = braided_lie_constants(b, params);
  for (auto& rep : lie.checks) out.push_back(rep);
  auto p = params;
  p["hbar"] = hbar.to_string();
  out.push_back(check_coproduct(b, re_relations(b, hbar), static_cast<std::size_t>(o.degree_bound), p));
  if (b.is_involutive() && !b.is_hecke()) {
    auto pr = params;
    pr["relations"] = "REA(r=1,k_max=1)";
    auto rep = check_coproduct(b, rea_relations(b, 1, 1), static_cast<std::size_t>(o.degree_bound), pr);
    rep.check = "coproduct-rea";
    out.push_back(rep);
  }
  return out;
}

inline std::vector<CheckReport> suite_rtrace_lemma(const Options& o) {
  auto b = braiding_from(o);
  auto params = base_params(o);
  params["n"] = b.dim();
  params["seed"] = o.seed;
  std::vector<CheckReport> out;
  out.push_back(timed_check("rtrace-partial", params, [&]() -> std::optional<std::string> {
    auto t = r_trace_leg(b.skew().c_op, b.matrix().matrix(), 2, 2);
    if (!(t == QMatrix::identity(b.dim()))) return "Tr^R_2 R_12 = " + to_json(t).dump();
    return std::nullopt;
  }));
  out.push_back(check_rtrace_conjugation(b, 5, o.seed, params));
  if (b.is_involutive()) {
    auto p = params;
    p["der_max"] = o.der_max;
    out.push_back(check_rtrace_cyclicity(b, color_for(b), o.der_max, p));
  }
  return out;
}

inline std::vector<CheckReport> suite_taylor(const Options& o) {
  Braiding b = uses_braiding(o) ? braiding_from(o) : make_flip(o.n);
  if (o.r != 1 && o.r != 2) throw InputError("global forms exist for r = 1 and r = 2");
  auto params = base_params(o);
  params["n"] = b.dim();
  params["r"] = o.r;
  params["max_order"] = o.der_max;
  GlobalKind kind = o.r == 1 ? GlobalKind::order1 : GlobalKind::order2;
  return {check_taylor_equivalence(b, kind, alpha_table(o.r), static_cast<int>(o.der_max), params)};
}

inline std::vector<CheckReport> suite_remark1(const Options& o) {
  auto params = base_params(o);
  params["der_max"] = o.der_max;
  auto br = lie_poisson_current(o.n);
  auto gens = generators_up_to(o.n, o.der_max);
  return {expect_failure("remark1-negative", check_derivation_compatibility(br, gens, params)),
          check_jacobi(br, generators_up_to(o.n, std::min(o.der_max, 1u)), params)};
}

inline std::vector<CheckReport> run_suite(const Options& o) {
  static const std::map<std::string, std::vector<CheckReport> (*)(const Options&)> suites{
      {"jacobi", suite_jacobi},       {"trace-involution", suite_trace_involution},
      {"gaudin", suite_gaudin},       {"braided-gaudin", suite_braided_gaudin},
      {"re-iso", suite_re_iso},       {"rtrace-lemma", suite_rtrace_lemma},
      {"taylor", suite_taylor},       {"remark1-negative", suite_remark1},
  };
  auto it = suites.find(o.suite);
  if (it == suites.end()) throw InputError("unknown suite " + o.suite);
  auto reps = it->second(o);
  std::stable_sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) { return a.check < b.check; });
  return reps;
}

inline void print_reports(const std::vector<CheckReport>& reps, const std::string& format, std::ostream& out) {
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reps) arr.push_back(to_json(r));
    out << arr.dump(2) << "\n";
    return;
  }
  for (const auto& r : reps) {
    out << r.status() << "  " << r.check << "  " << r.params.dump() << "  (" << r.elapsed_ms << " ms)\n";
    if (r.witness) out << "    witness: " << *r.witness << "\n";
  }
}

inline int analyze_command(const Options& o, std::ostream& out) {
  auto op = operator_from(o);
  auto rep = analyze(op);
  const auto& c = rep.classification;
  std::string kind = to_string(c.kind);
  if (c.kind == SymmetryKind::hecke && c.q) kind += "(" + c.q->to_string() + ")";
  if (o.format == "json") {
    nlohmann::json j{{"ybe", rep.ybe}, {"classification", kind}};
    if (c.q_minus_qinv) j["q_minus_qinv"] = c.q_minus_qinv->to_string();
    j["witness"] = rep.ybe ? nlohmann::json(nullptr) : nlohmann::json(rep.witness_text);
    out << j.dump(2) << "\n";
  } else {
    out << "ybe: " << (rep.ybe ? "true" : "false") << "\nclassification: " << kind << "\n";
    if (c.kind == SymmetryKind::hecke && !c.q) out << "q - 1/q: " << c.q_minus_qinv->to_string() << "\n";
    if (!rep.ybe) out << "witness: " << rep.witness_text << "\n";
  }
  return rep.ybe ? 0 : 1;
}

inline int skew_command(const Options& o, std::ostream& out, std::ostream& err) {
  auto op = operator_from(o);
  SkewData s;
  try {
    s = skew_inverse(op);
  } catch (const NotSkewInvertible& e) {
    err << "not skew-invertible: " << e.what() << "\n";
    return 1;
  }
  if (o.format == "json") {
    out << nlohmann::json{{"psi", to_json(s.psi)}, {"B", to_json(s.b_op)}, {"C", to_json(s.c_op)}}.dump(2) << "\n";
  } else {
    out << "Psi: " << to_json(s.psi.matrix()).dump() << "\nB: " << to_json(s.b_op).dump()
        << "\nC: " << to_json(s.c_op).dump() << "\n";
  }
  return 0;
}

/// Parses argv and runs the chosen command, writing reports to `out` and
/// diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Exact verification of Gaudin-type and braided Poisson structures", "brpois"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--n", o.n, "dimension of V")->check(CLI::PositiveNumber);
    sub->add_option("--r", o.r, "order of the local bracket")->check(CLI::PositiveNumber);
    sub->add_option("--q", o.q, "q for dj-hecke, twist factor for diag-twist");
    sub->add_option("--braiding", o.braiding_file, "braiding matrix as JSON {dim, entries}");
    sub->add_option("--preset", o.preset, "built-in braiding")
        ->check(CLI::IsMember({"flip", "diag-twist", "dj-hecke"}));
    sub->add_option("--twist", o.twist_file, "diagonal twist factors as JSON");
    sub->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", o.seed);
  };
  auto* analyze_cmd = app.add_subcommand("analyze", "Yang-Baxter check and classification");
  auto* skew_cmd = app.add_subcommand("skew-inverse", "skew-inverse Psi and the operators B, C");
  auto* verify_cmd = app.add_subcommand("verify", "run a named suite of checks");
  add_common(analyze_cmd);
  add_common(skew_cmd);
  add_common(verify_cmd);
  verify_cmd->add_option("suite", o.suite, "suite name")
      ->required()
      ->check(CLI::IsMember({"jacobi", "trace-involution", "gaudin", "braided-gaudin", "re-iso", "rtrace-lemma",
                             "taylor", "remark1-negative"}));
  verify_cmd->add_option("--sites", o.sites, "number of poles");
  verify_cmd->add_option("--poles", o.poles, "comma-separated poles");
  verify_cmd->add_option("--hbar", o.hbar);
  verify_cmd->add_option("--bracket", o.bracket)->check(CLI::IsMember({"local", "braided", "lie-poisson"}));
  verify_cmd->add_option("--pow-max", o.pow_max);
  verify_cmd->add_option("--der-max", o.der_max);
  verify_cmd->add_option("--degree-bound", o.degree_bound);
  verify_cmd->add_flag("--classical-sign", o.classical_sign, "negate brackets (conventional sign)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  try {
    if (analyze_cmd->parsed()) return analyze_command(o, out);
    if (skew_cmd->parsed()) return skew_command(o, out, err);
    auto reps = run_suite(o);
    print_reports(reps, o.format, out);
    return std::all_of(reps.begin(), reps.end(), [](const auto& r) { return r.pass; }) ? 0 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace brpois::cli
