// Acceptance suite: one PASS/FAIL line per criterion. All checks are exact; only the
// runtime limits below are tolerances.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "liesym/errors.hpp"
#include "liesym/report.hpp"
#include "oracles.hpp"

using namespace liesym;

namespace {

constexpr double kLimitConditions = 30.0;
constexpr double kLimitHeat = 60.0;
constexpr double kLimitFree = 60.0;
constexpr double kLimitSpheres = 120.0;
constexpr double kLimitCollineations = 30.0;
constexpr double kLimitSigma = 10.0;
constexpr double kLimitStructure = 10.0;
constexpr double kLimitDeterminism = 60.0;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Problem load(const std::string& name) { return parse_problem(slurp(std::string(LIESYM_DATA_DIR) + "/" + name)); }

bool all_zero(const std::vector<Expr>& v) {
  return std::all_of(v.begin(), v.end(), [](const Expr& e) { return e.is_zero(); });
}
bool all_zero(const ExprMatrix& m) {
  return std::all_of(m.begin(), m.end(), [](const auto& r) { return all_zero(r); });
}
bool all_zero(const std::vector<ExprMatrix>& c) {
  return std::all_of(c.begin(), c.end(), [](const auto& m) { return all_zero(m); });
}

std::vector<Generator> generators(const std::vector<SymmetryCandidate>& cs) {
  std::vector<Generator> out;
  for (const auto& c : cs) out.push_back(c.generator);
  return out;
}

bool in_span(const std::vector<Generator>& basis, const Generator& X, const JetContext& jets) {
  auto all = basis;
  all.push_back(X);
  return canonical_algebra(all, jets).basis.size() == canonical_algebra(basis, jets).basis.size();
}

Generator gen(const Problem& p, const std::string& text) { return parse_generator(text, p); }

Outcome conditions() {
  auto C = multiplier_conditions(2, 2);
  const auto& M = C.model;
  auto structure = C.family(ConditionFamily::Structure);
  if (structure.size() != 8) return {false, "structure family has " + std::to_string(structure.size()) + " equations"};
  for (const auto* e : structure)
    for (const auto& a : e->lhs.atoms())
      for (const auto& f : M.coefficient_functions)
        if (!a.is_symbol() && a.function() == f) return {false, "structure family depends on " + f.name()};
  auto templates = oracle::condition_templates(M);
  for (auto f : {ConditionFamily::Source, ConditionFamily::Linear, ConditionFamily::Quadratic, ConditionFamily::Principal,
                 ConditionFamily::Time}) {
    std::vector<Expr> emitted;
    for (const auto* e : C.family(f)) emitted.push_back(e->lhs);
    if (!oracle::matches_up_to_scale(emitted, templates[f])) return {false, to_string(f) + " family does not match"};
  }
  for (auto f : {ConditionFamily::Principal, ConditionFamily::Time}) {
    bool seen = false;
    for (const auto* e : C.family(f)) {
      if (!diff(diff(e->lhs, M.lambda), M.lambda).is_zero()) return {false, to_string(f) + " is nonlinear in lambda"};
      seen = seen || e->lhs.depends_on(M.lambda);
    }
    if (!seen) return {false, to_string(f) + " does not contain lambda"};
  }
  return {true, "8 structure equations, 5 families matched"};
}

Outcome heat() {
  Problem p = load("heat.lsy");
  const auto& sys = p.system;
  auto opt = resolve_options(p, 3, 2);
  auto A = algebra_of(assemble_from_collineations(sys, opt), sys, 3);
  auto B = brute_force_symmetries(sys, 3);
  if (!compare_algebras(A, B, sys.jets())) return {false, "assembled and brute-force algebras differ"};
  if (A.finite_dimension != 6) return {false, "finite dimension " + std::to_string(A.finite_dimension)};
  if (B.finite_dimension != 6) return {false, "brute-force finite dimension " + std::to_string(B.finite_dimension)};
  for (const auto* s : {"d/dt", "d/dx", "u*d/du", "x*d/dx + 2*t*d/dt", "2*t*d/dx - x*u*d/du",
                        "4*t^2*d/dt + 4*t*x*d/dx - (x^2+2*t)*u*d/du"}) {
    Generator X = gen(p, s);
    if (!verify_symmetry(X, sys).is_symmetry) return {false, std::string(s) + " fails verification"};
    if (!in_span(A.basis, X, sys.jets())) return {false, std::string(s) + " missing from the algebra"};
  }
  return {true, "dimension 6, equivalent to the degree-3 ansatz"};
}

Outcome free_system() {
  Problem p = load("flat2.lsy");
  const auto& sys = p.system;
  auto opt = resolve_options(p, 2, 1);
  auto closed = assemble_free_system(sys, opt);
  auto full = generators(assemble_from_collineations(sys, opt));
  if (closed.empty()) return {false, "no generators"};
  for (const auto& c : closed) {
    if (!(instantiate(c.provenance, sys.jets()) == c.generator)) return {false, "template mismatch"};
    if (!verify_symmetry(c.generator, sys).is_symmetry) return {false, "generator fails verification"};
    if (!in_span(full, c.generator, sys.jets())) return {false, "generator outside the general span"};
  }
  bool quadratic = std::any_of(closed.begin(), closed.end(), [&](const SymmetryCandidate& c) {
    return !diff(diff(c.generator.xi_t, sys.t), sys.t).is_zero();
  });
  if (!quadratic) return {false, "no generator with xi^t quadratic in t"};
  return {true, std::to_string(closed.size()) + " generators verified and contained"};
}

Outcome spheres() {
  Problem p = load("sphere.lsy");
  const auto& sys = p.system;
  auto opt = resolve_options(p, 2, 1);
  for (const Metric* m : {&sys.g, &*sys.dependent_metric()}) {
    auto ms = maximal_symmetry_test(*m);
    if (!ms.is_maximal || !ms.curvature_constant || ms.curvature_constant->is_zero())
      return {false, "metric is not maximally symmetric with K != 0"};
    if (!solve_collineations(*m, CollineationKind::HV, 2, opt.assembly).basis.empty()) return {false, "HV found"};
    auto kv = solve_collineations(*m, CollineationKind::KV, 2, opt.assembly).basis;
    auto ac = solve_collineations(*m, CollineationKind::AC, 2, opt.assembly).basis;
    if (ac.size() != kv.size()) return {false, "proper AC found"};
    for (const auto& z : ac)
      if (!all_zero(lie_metric(z.field, *m))) return {false, "AC is not a KV"};
  }
  auto A = algebra_of(assemble_from_collineations(sys, opt), sys, 2);
  if (A.finite_dimension != 7) return {false, "finite dimension " + std::to_string(A.finite_dimension)};
  LieAlgebra expected;
  expected.basis.push_back(gen(p, "d/dt"));
  for (const auto& k : solve_collineations(sys.g, CollineationKind::KV, 2).basis)
    expected.basis.push_back({Expr(), k.field.components, {Expr(), Expr()}});
  for (const auto& k : solve_collineations(*sys.dependent_metric(), CollineationKind::KV, 2).basis)
    expected.basis.push_back({Expr(), {Expr(), Expr()}, k.field.components});
  if (!compare_algebras(A, expected, sys.jets())) return {false, "algebra differs from d/dt + KV(g) + KV(H)"};
  if (!compare_algebras(A, brute_force_symmetries(sys, 2), sys.jets())) return {false, "differs from ansatz oracle"};
  return {true, "no HV or proper AC; algebra 1 + 3 + 3"};
}

Outcome collineations() {
  Problem p = parse_problem(
      "indep x y; dep u v; metric g { xx = 1; yy = 1; } metric H { uu = 1; vv = 1; } F { u = 0; v = 0; }");
  const auto& g = p.system.g;
  auto kv = solve_collineations(g, CollineationKind::KV, 2);
  if (kv.basis.size() != 3) return {false, "KV dimension " + std::to_string(kv.basis.size())};
  for (const auto& k : kv.basis)
    if (!all_zero(lie_metric(k.field, g))) return {false, "KV fails L g = 0"};
  auto hv = solve_collineations(g, CollineationKind::HV, 2);
  if (hv.killing.size() + hv.basis.size() != 4) return {false, "homothetic algebra is not 4-dimensional"};
  for (const auto& h : hv.basis) {
    auto L = lie_metric(h.field, g);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        if (!(L[i][j] == Expr(2) * *h.factor * g(i, j))) return {false, "HV fails L g = 2 psi g"};
    if (!h.potential || !(*h.potential == parse("(x^2+y^2)/2", p.table))) return {false, "HV potential"};
  }
  const auto& H = *p.system.dependent_metric();
  auto ac = solve_collineations(H, CollineationKind::AC, 2);
  if (ac.basis.size() != 6) return {false, "AC dimension " + std::to_string(ac.basis.size())};
  for (const auto& z : ac.basis)
    if (!all_zero(lie_connection(z.field, christoffel(H)))) return {false, "AC fails L Gamma = 0"};
  return {true, "KV 3, homothetic 4, AC 6"};
}

Outcome sigma() {
  Problem p = load("heat.lsy");
  const auto& sys = p.system;
  auto basis = solve_sigma_polynomial(sys, 4);
  bool quad = false, cubic = false;
  for (const auto& s : basis) {
    const Expr& e = s[0];
    if (!(diff(e, sys.t) == diff(diff(e, sys.x.coords[0]), sys.x.coords[0]))) return {false, "sigma_t != sigma_xx"};
    if (!verify_symmetry({Expr(), {Expr()}, s}, sys).is_symmetry) return {false, "sigma d/du fails verification"};
    quad = quad || e == parse("x^2+2*t", p.table);
    cubic = cubic || e == parse("x^3+6*t*x", p.table);
  }
  if (!quad || !cubic) return {false, "missing x^2+2t or x^3+6tx"};
  return {true, std::to_string(basis.size()) + " independent solutions"};
}

Outcome structure_check() {
  Problem p = load("heat.lsy");
  const auto& sys = p.system;
  auto A = algebra_of(assemble_from_collineations(sys, resolve_options(p, 3, 2)), sys, 3);
  auto c = structure(A.finite(), sys.jets());
  if (!is_antisymmetric(c)) return {false, "not antisymmetric"};
  if (!satisfies_jacobi(c)) return {false, "Jacobi identity fails"};
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) {
      Generator lhs = commutator(A.basis[i], A.basis[j], sys.jets());
      Generator rhs{Expr(), std::vector<Expr>(sys.n()), std::vector<Expr>(sys.m())};
      for (std::size_t k = 0; k < c.size(); ++k) rhs = rhs + Expr(c[i][j][k]) * A.basis[k];
      if (!(lhs == rhs)) return {false, "bracket expansion mismatch"};
    }
  return {true, "closed, antisymmetric, Jacobi"};
}

Outcome determinism() {
#ifdef LIESYM_CLI
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "liesym_acceptance";
  fs::create_directories(dir);
  std::string heat = std::string(LIESYM_DATA_DIR) + "/heat.lsy";
  for (int k = 0; k < 2; ++k) {
    std::string cmd = std::string(LIESYM_CLI) + " symmetries " + heat + " --json " + (dir / ("run" + std::to_string(k) + ".json")).string() +
                      " > " + (dir / ("run" + std::to_string(k) + ".txt")).string();
    if (std::system(cmd.c_str()) != 0) return {false, "command failed"};
  }
  if (slurp((dir / "run0.txt").string()) != slurp((dir / "run1.txt").string())) return {false, "text differs"};
  if (slurp((dir / "run0.json").string()) != slurp((dir / "run1.json").string())) return {false, "JSON differs"};
  return {true, "text and JSON byte-identical"};
#else
  return {false, "command-line tool not built"};
#endif
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<Outcome()> check;
  };
  std::vector<Criterion> criteria{
      {1, "condition families of the opaque n=2, m=2 model", kLimitConditions, conditions},
      {2, "heat equation algebra", kLimitHeat, heat},
      {3, "free-system closed form", kLimitFree, free_system},
      {4, "two stereographic spheres", kLimitSpheres, spheres},
      {5, "collineation solver", kLimitCollineations, collineations},
      {6, "sigma family of the heat equation", kLimitSigma, sigma},
      {7, "structure constants of the heat algebra", kLimitStructure, structure_check},
      {8, "deterministic reports", kLimitDeterminism, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.limit) o = {false, "over the time limit"};
    failed += o.pass ? 0 : 1;
    std::printf("%s %d %s: %s (%.2f s, limit %.0f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), secs, c.limit);
  }
  return failed == 0 ? 0 : 1;
}
