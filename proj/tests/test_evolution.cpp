#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liesym/errors.hpp"
#include "liesym/evolution.hpp"
#include "liesym/parser.hpp"

using namespace liesym;

namespace {

struct Setup {
  Symbol t = Symbol::time("t");
  std::vector<Symbol> x;
  std::vector<Symbol> u;
  SymbolTable table;

  Setup(std::vector<std::string> xs, std::vector<std::string> us) {
    table.declare(t);
    for (std::size_t i = 0; i < xs.size(); ++i) x.push_back(Symbol::independent(xs[i], static_cast<int>(i + 1)));
    for (std::size_t a = 0; a < us.size(); ++a) u.push_back(Symbol::dependent(us[a], static_cast<int>(a + 1)));
    for (const auto& s : x) table.declare(s);
    for (const auto& s : u) table.declare(s);
    JetContext jets(t, x, u);
    for (const auto& s : jets.derivative_jets()) table.declare(s);
  }
  Expr p(const std::string& s) const { return parse(s, table); }
  Metric flat(const std::vector<Symbol>& c) const {
    ExprMatrix m(c.size(), std::vector<Expr>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) m[i][i] = Expr(1);
    return Metric(Chart(c), m);
  }
  BimetricSystem system(Metric g, DependentGeometry h, const std::vector<std::string>& f) const {
    std::vector<Expr> fs;
    for (const auto& s : f) fs.push_back(p(s));
    return BimetricSystem(t, Chart(x), Chart(u), std::move(g), std::move(h), fs);
  }
};

}  // namespace

TEST_CASE("jet context naming and layout") {
  Setup s({"x", "y"}, {"u"});
  JetContext j(s.t, s.x, s.u);
  CHECK(j.ut(0).name() == "u_t");
  CHECK(j.ux(0, 1).name() == "u_y");
  CHECK(j.uxx(0, 0, 1).name() == "u_xy");
  CHECK(j.uxx(0, 1, 0) == j.uxx(0, 0, 1));
  CHECK(j.second(0, 0, 2).name() == "u_ty");
  CHECK(j.second(0, 0, 0).name() == "u_tt");
  // 3 first-order and 6 second-order jets
  CHECK(j.derivative_jets().size() == 9);
  CHECK(j.all().size() == 10);
  for (const auto& s : j.derivative_jets()) CHECK(s.kind() == SymbolKind::Jet);
}

TEST_CASE("heat equation") {
  Setup s({"x"}, {"u"});
  auto sys = s.system(s.flat(s.x), s.flat(s.u), {"0"});
  auto Q = build_Q(sys);
  REQUIRE(Q.size() == 1);
  CHECK(Q[0] == s.p("u_xx - u_t"));
  CHECK(sys.is_free());
  auto map = solve_for_ut(Q, sys.jets());
  CHECK(map.vars.at(sys.jets().ut(0)) == s.p("u_xx"));
}

TEST_CASE("curved dependent metric") {
  Setup s({"x"}, {"u"});
  Metric H(Chart(s.u), {{s.p("1/u^2")}});
  auto sys = s.system(s.flat(s.x), H, {"0"});
  // Levi-Civita of 1/u^2 on a line: Gamma = H'/(2H) = -1/u
  CHECK(sys.dependent_connection()(0, 0, 0) == s.p("-1/u"));
  auto Q = build_Q(sys);
  CHECK(Q[0] == s.p("u_xx - u_x^2/u - u_t"));
  auto map = solve_for_ut(Q, sys.jets());
  Expr ut = map.vars.at(sys.jets().ut(0));
  CHECK(ut == s.p("u_xx - u_x^2/u"));
  CHECK(substitute(Q[0], map).is_zero());

  // The same geometry given as a connection builds the same system.
  auto via_connection = s.system(s.flat(s.x), christoffel(H), {"0"});
  CHECK(build_Q(via_connection) == Q);
  CHECK(!via_connection.dependent_metric().has_value());
  CHECK(sys.dependent_metric().has_value());
}

TEST_CASE("source terms and several components") {
  Setup s({"x", "y"}, {"u", "v"});
  Setup one({"x", "y"}, {"u"});
  auto lap = one.system(one.flat(one.x), one.flat(one.u), {"u"});
  CHECK(build_Q(lap)[0] == one.p("u_xx + u_yy + u - u_t"));
  CHECK(!lap.is_free());

  auto sys = s.system(s.flat(s.x), s.flat(s.u), {"v", "-u"});
  auto Q = build_Q(sys);
  auto map = solve_for_ut(Q, sys.jets());
  CHECK(map.vars.at(sys.jets().ut(0)) == s.p("u_xx + u_yy + v"));
  CHECK(map.vars.at(sys.jets().ut(1)) == s.p("v_xx + v_yy - u"));
  for (const auto& q : Q) CHECK(substitute(q, map).is_zero());
}

TEST_CASE("structure of Q on a curved example") {
  Setup s({"x", "y"}, {"u", "v"});
  Metric g(Chart(s.x), {{s.p("1+y^2"), s.p("x")}, {s.p("x"), s.p("2")}});
  Metric H(Chart(s.u), {{s.p("1+v^2"), s.p("0")}, {s.p("0"), s.p("u^2+1")}});
  auto sys = s.system(g, H, {"t*x*u", "v^2"});
  auto Q = build_Q(sys);
  const auto& jets = sys.jets();
  std::vector<Symbol> basis = jets.derivative_jets();
  for (std::size_t a = 0; a < Q.size(); ++a) {
    // u^A_t appears once, with coefficient -1, and no other time jet appears.
    for (std::size_t b = 0; b < Q.size(); ++b) CHECK(diff(Q[a], jets.ut(b)) == Expr(a == b ? -1 : 0));
    for (std::size_t b = 0; b < Q.size(); ++b) {
      CHECK(!Q[a].depends_on(jets.second(b, 0, 0)));
      for (std::size_t i = 1; i <= 2; ++i) CHECK(!Q[a].depends_on(jets.second(b, 0, i)));
    }
    for (const auto& [mono, coeff] : collect(Q[a], basis)) {
      int first = 0, second = 0;
      for (const auto& [atom, e] : mono.factors()) {
        const auto& sym = atom.symbol();
        (sym.jet_order() == 1 ? first : second) += e;
      }
      CHECK(second <= 1);
      CHECK(first <= 2);
      if (second == 1) CHECK(first == 0);
    }
  }
}

TEST_CASE("validation") {
  Setup s({"x"}, {"u"});
  CHECK_THROWS_AS(s.system(s.flat(s.x), s.flat(s.u), {"u", "u"}), ValidationError);
  CHECK_THROWS_AS(s.system(s.flat(s.x), s.flat(s.u), {"u_x"}), ValidationError);
  CHECK_THROWS_AS(BimetricSystem(s.t, Chart(s.x), Chart(s.u), s.flat(s.u), s.flat(s.u), {Expr()}), ChartMismatch);
  CHECK_THROWS_AS(Metric(Chart(s.u), {{s.p("x")}}), CouplingViolation);
  auto sys = s.system(s.flat(s.x), s.flat(s.u), {"0"});
  std::vector<Expr> bad = {s.p("u_xx - 2*u_t")};
  CHECK_THROWS_AS(solve_for_ut(bad, sys.jets()), MalformedSystem);
  CHECK_THROWS_AS(solve_for_ut({}, sys.jets()), MalformedSystem);
}
