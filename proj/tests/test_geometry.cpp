#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liesym/errors.hpp"
#include "liesym/geometry.hpp"
#include "liesym/parser.hpp"

using namespace liesym;

namespace {

struct Plane {
  Symbol x = Symbol::independent("x", 1);
  Symbol y = Symbol::independent("y", 2);
  Chart chart{{x, y}};
  SymbolTable table;
  Plane() {
    table.declare(x);
    table.declare(y);
  }
  Expr p(const std::string& s) const { return parse(s, table); }
  Metric metric(const std::string& xx, const std::string& xy, const std::string& yy) const {
    return Metric(chart, {{p(xx), p(xy)}, {p(xy), p(yy)}});
  }
  Metric flat() const { return metric("1", "0", "1"); }
  Metric sphere() const { return metric("4/(1+x^2+y^2)^2", "0", "4/(1+x^2+y^2)^2"); }
  VectorFieldGeo field(const std::string& a, const std::string& b) const { return {chart, {p(a), p(b)}}; }
};

bool all_zero(const ExprMatrix& m) {
  for (const auto& r : m)
    for (const auto& e : r)
      if (!e.is_zero()) return false;
  return true;
}

bool all_zero(const std::vector<ExprMatrix>& t) {
  for (const auto& m : t)
    if (!all_zero(m)) return false;
  return true;
}

// Independent oracle: Levi-Civita symbols of a diagonal metric from the textbook closed forms
// Gamma^i_ii = g_ii,i / (2 g_ii), Gamma^i_ij = g_ii,j / (2 g_ii), Gamma^i_jj = -g_jj,i / (2 g_ii).
Expr diagonal_christoffel(const Metric& g, std::size_t i, std::size_t j, std::size_t k) {
  const auto& x = g.chart.coords;
  if (j == i && k == i) return diff(g(i, i), x[i]) / (Expr(2) * g(i, i));
  if (j == i) return diff(g(i, i), x[k]) / (Expr(2) * g(i, i));
  if (k == i) return diff(g(i, i), x[j]) / (Expr(2) * g(i, i));
  if (j == k) return -diff(g(j, j), x[i]) / (Expr(2) * g(i, i));
  return Expr();
}

}  // namespace

TEST_CASE_FIXTURE(Plane, "inverse metric") {
  CHECK(inverse_metric(flat()) == flat().components);
  Chart line{{x}};
  Metric g1(line, {{p("1/x^2")}});
  CHECK(inverse_metric(g1)[0][0] == p("x^2"));
  auto inv = inverse_metric(sphere());
  CHECK(inv[0][0] == p("(1+x^2+y^2)^2/4"));
  CHECK(inv[0][1].is_zero());
  Metric g = metric("1+y^2", "x", "2");
  auto gi = inverse_metric(g);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Expr s = g(i, 0) * gi[0][j] + g(i, 1) * gi[1][j];
      CHECK(s == Expr(i == j ? 1 : 0));
    }
  CHECK_THROWS_AS(metric("1", "1", "1"), SingularMetric);
  CHECK_THROWS_AS(Metric(chart, {{p("1"), p("x")}, {p("0"), p("1")}}), ValidationError);
}

TEST_CASE_FIXTURE(Plane, "christoffel symbols") {
  CHECK(all_zero(christoffel(flat()).components));
  Chart line{{x}};
  Metric g1(line, {{p("1/x^2")}});
  CHECK(christoffel(g1)(0, 0, 0) == p("-1/x"));
  auto G = christoffel(sphere());
  CHECK(G(0, 0, 0) == p("-2*x/(1+x^2+y^2)"));
  for (const Metric& g : {sphere(), metric("1", "0", "x^2"), metric("1", "0", "x^4")}) {
    auto Gg = christoffel(g);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k) CHECK(Gg(i, j, k) == diagonal_christoffel(g, i, j, k));
  }
}

TEST_CASE_FIXTURE(Plane, "metric compatibility") {
  for (const Metric& g : {flat(), sphere(), metric("1+y^2", "x", "2"), metric("1", "0", "x^2")}) {
    CHECK(all_zero(metric_covariant_derivative(g, christoffel(g))));
  }
}

TEST_CASE_FIXTURE(Plane, "contracted connection") {
  for (const auto& e : contracted_connection(flat())) CHECK(e.is_zero());
  Chart line{{x}};
  CHECK(contracted_connection(Metric(line, {{p("1/x^2")}}))[0] == p("-x"));
  // diag(1, x^2): Gamma^1_22 = -x, Gamma^2_12 = 1/x; Gamma^1 = g^22 Gamma^1_22 = -1/x, Gamma^2 = 0.
  auto c = contracted_connection(metric("1", "0", "x^2"));
  CHECK(c[0] == p("-1/x"));
  CHECK(c[1].is_zero());
}

TEST_CASE_FIXTURE(Plane, "lie derivative of metric and connection") {
  CHECK(all_zero(lie_metric(field("1", "0"), flat())));
  auto dil = lie_metric(field("x", "y"), flat());
  CHECK(dil[0][0] == Expr(2));
  CHECK(dil[1][1] == Expr(2));
  CHECK(dil[0][1].is_zero());
  CHECK(all_zero(lie_metric(field("-y", "x"), flat())));

  Symbol u = Symbol::dependent("u", 1);
  Symbol v = Symbol::dependent("v", 2);
  Chart uline{{u}};
  Connection zero1(uline, {{{Expr()}}});
  CHECK(all_zero(lie_connection({uline, {Expr(1)}}, zero1)));
  CHECK(lie_connection({uline, {Expr(u) * u}}, zero1)[0][0][0] == Expr(2));
  Chart uv{{u, v}};
  Connection zero2(uv, std::vector<ExprMatrix>(2, ExprMatrix(2, std::vector<Expr>(2))));
  VectorFieldGeo linear{uv, {Expr(3) * u - Expr(v) * Rational(1, 2), Expr(u) * 7 + Expr(v)}};
  CHECK(all_zero(lie_connection(linear, zero2)));
  CHECK_THROWS_AS(lie_metric(linear, flat()), ChartMismatch);
}

TEST_CASE_FIXTURE(Plane, "collineations of the Euclidean plane") {
  auto kv = solve_collineations(flat(), CollineationKind::KV, 2);
  REQUIRE(kv.basis.size() == 3);
  // Oracle: each expected generator lies in the span, and every result is Killing.
  for (const auto& e : kv.basis) CHECK(all_zero(lie_metric(e.field, flat())));
  auto hv = solve_collineations(flat(), CollineationKind::HV, 2);
  REQUIRE(hv.basis.size() == 1);
  CHECK(hv.killing.size() == 3);
  CHECK(hv.basis[0].field.components[0] == p("x"));
  CHECK(hv.basis[0].field.components[1] == p("y"));
  REQUIRE(hv.basis[0].potential);
  CHECK(*hv.basis[0].potential == p("(x^2+y^2)/2"));
  auto ckv = solve_collineations(flat(), CollineationKind::CKV, 2);
  CHECK(ckv.basis.size() == 6);  // translations, rotation, dilation, two special conformal maps
  for (const auto& e : ckv.basis) {
    auto L = lie_metric(e.field, flat());
    ExprMatrix expect = flat().components;
    for (auto& r : expect)
      for (auto& x : r) x = x * *e.factor * Expr(2);
    CHECK(L == expect);
  }
  // KV is contained in CKV.
  std::vector<std::vector<Rational>> span;
  auto flatten = [&](const VectorFieldGeo& f) {
    std::vector<Rational> out;
    for (const auto& c : f.components)
      for (const auto& m : monomial_basis({x, y}, 2)) {
        auto parts = collect(c, {x, y});
        auto mono = collect(m, {x, y}).begin()->first;
        out.push_back(parts.count(mono) ? parts.at(mono).constant_value() : Rational(0));
      }
    return out;
  };
  for (const auto& e : ckv.basis) span.push_back(flatten(e.field));
  std::size_t r = row_echelon_basis(span).size();
  for (const auto& e : kv.basis) {
    auto s = span;
    s.push_back(flatten(e.field));
    CHECK(row_echelon_basis(s).size() == r);
  }
  auto ac = solve_collineations(flat(), CollineationKind::AC, 2);
  CHECK(ac.basis.size() == 6);
}

TEST_CASE_FIXTURE(Plane, "collineations of the stereographic sphere") {
  auto kv = solve_collineations(sphere(), CollineationKind::KV, 2);
  CHECK(kv.basis.size() == 3);
  for (const auto& e : kv.basis) CHECK(all_zero(lie_metric(e.field, sphere())));
  auto hv = solve_collineations(sphere(), CollineationKind::HV, 4);
  CHECK(hv.basis.empty());
  CHECK(hv.killing.size() == 3);
  auto ac = solve_collineations(sphere(), CollineationKind::AC, 2);
  CHECK(ac.basis.size() == 3);
  // KVs are affine collineations of the Levi-Civita connection.
  auto G = christoffel(sphere());
  for (const auto& e : kv.basis) CHECK(all_zero(lie_connection(e.field, G)));
}

TEST_CASE_FIXTURE(Plane, "KV closure under commutators") {
  for (const Metric& g : {flat(), sphere()}) {
    auto kv = solve_collineations(g, CollineationKind::KV, 2);
    for (const auto& a : kv.basis)
      for (const auto& b : kv.basis) {
        VectorFieldGeo br{chart, {Expr(), Expr()}};
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t k = 0; k < 2; ++k)
            br.components[i] += a.field.components[k] * diff(b.field.components[i], chart.coords[k]) -
                                b.field.components[k] * diff(a.field.components[i], chart.coords[k]);
        CHECK(all_zero(lie_metric(br, g)));
      }
  }
}

TEST_CASE_FIXTURE(Plane, "gradient decomposition") {
  CHECK(gradient_decompose(field("x", "y"), flat()) == p("(x^2+y^2)/2"));
  CHECK_THROWS_AS(gradient_decompose(field("-y", "x"), flat()), NotClosed);
  CHECK(gradient_decompose(field("0", "0"), flat()).is_zero());
  // Rational potential: g = sphere, zeta = (x, y) lowers to 4(x dx + y dy)/(1+r^2)^2.
  Expr phi = gradient_decompose(field("x", "y"), sphere());
  CHECK(diff(phi, x) == p("4*x/(1+x^2+y^2)^2"));
  CHECK(diff(phi, y) == p("4*y/(1+x^2+y^2)^2"));
  // Logarithmic potential is reported as not integrable.
  Chart line{{x}};
  Metric g1(line, {{p("1/x^2")}});
  CHECK_THROWS_AS(gradient_decompose({line, {p("x")}}, g1), NotIntegrable);
  auto grads = gradient_subspace({field("1", "0"), field("0", "1"), field("-y", "x"), field("x", "y")}, flat());
  CHECK(grads.size() == 3);
}

TEST_CASE_FIXTURE(Plane, "maximal symmetry") {
  auto f = maximal_symmetry_test(flat());
  CHECK(f.is_maximal);
  CHECK(*f.curvature_constant == Expr(0));
  auto s = maximal_symmetry_test(sphere());
  CHECK(s.is_maximal);
  CHECK(*s.curvature_constant == Expr(1));
  CHECK_FALSE(maximal_symmetry_test(metric("1", "0", "x^4")).is_maximal);
  // Dimension bound: maximal iff dim KV = n(n+1)/2.
  CHECK(solve_collineations(metric("1", "0", "x^4"), CollineationKind::KV, 2).basis.size() < 3);
}

TEST_CASE_FIXTURE(Plane, "serial and parallel solvers agree") {
  AssemblyOptions serial{Execution::Serial, 0};
  AssemblyOptions parallel{Execution::Parallel, 0};
  auto a = solve_collineations(sphere(), CollineationKind::KV, 2, serial);
  auto b = solve_collineations(sphere(), CollineationKind::KV, 2, parallel);
  REQUIRE(a.basis.size() == b.basis.size());
  for (std::size_t i = 0; i < a.basis.size(); ++i) CHECK(a.basis[i].field.components == b.basis[i].field.components);
  AssemblyOptions capped{Execution::Serial, 3};
  CHECK_THROWS_AS(solve_collineations(sphere(), CollineationKind::KV, 2, capped), ResourceLimit);
}
