#include "liesym/evolution.hpp"

#include <algorithm>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

std::string direction_name(const Symbol& t, const std::vector<Symbol>& x, std::size_t alpha) {
  return alpha == 0 ? t.name() : x[alpha - 1].name();
}

bool contains(const std::vector<Symbol>& v, const Symbol& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

Connection connection_of(const DependentGeometry& h) {
  if (const auto* c = std::get_if<Connection>(&h)) return *c;
  return christoffel(std::get<Metric>(h));
}

const Chart& chart_of(const DependentGeometry& h) {
  if (const auto* c = std::get_if<Connection>(&h)) return c->chart;
  return std::get<Metric>(h).chart;
}

}  // namespace

JetContext::JetContext(Symbol t, std::vector<Symbol> x, std::vector<Symbol> u)
    : t_(std::move(t)), x_(std::move(x)), u_(std::move(u)) {
  const std::size_t dirs = x_.size() + 1;
  first_.resize(u_.size());
  second_.resize(u_.size());
  for (std::size_t a = 0; a < u_.size(); ++a) {
    const std::string& base = u_[a].name();
    for (std::size_t al = 0; al < dirs; ++al)
      first_[a].push_back(Symbol::jet(base + "_" + direction_name(t_, x_, al), static_cast<int>(a),
                                      {static_cast<int>(al)}));
    second_[a].assign(dirs, std::vector<Symbol>(dirs, first_[a][0]));
    for (std::size_t al = 0; al < dirs; ++al)
      for (std::size_t be = al; be < dirs; ++be) {
        Symbol s = Symbol::jet(base + "_" + direction_name(t_, x_, al) + direction_name(t_, x_, be),
                               static_cast<int>(a), {static_cast<int>(al), static_cast<int>(be)});
        second_[a][al][be] = s;
        second_[a][be][al] = s;
      }
    for (std::size_t al = 0; al < dirs; ++al) jets_.push_back(first_[a][al]);
    for (std::size_t al = 0; al < dirs; ++al)
      for (std::size_t be = al; be < dirs; ++be) jets_.push_back(second_[a][al][be]);
  }
}

const Symbol& JetContext::first(std::size_t a, std::size_t alpha) const { return first_.at(a).at(alpha); }

const Symbol& JetContext::second(std::size_t a, std::size_t alpha, std::size_t beta) const {
  return second_.at(a).at(alpha).at(beta);
}

std::vector<Symbol> JetContext::all() const {
  std::vector<Symbol> out = u_;
  out.insert(out.end(), jets_.begin(), jets_.end());
  return out;
}

BimetricSystem::BimetricSystem(Symbol time, Chart space, Chart dependent, Metric metric, DependentGeometry h,
                               std::vector<Expr> f)
    : t(std::move(time)),
      x(std::move(space)),
      u(std::move(dependent)),
      g(std::move(metric)),
      H(std::move(h)),
      F(std::move(f)),
      gamma_u_(connection_of(H)),
      jets_(t, x.coords, u.coords) {
  if (!(g.chart == x)) throw ChartMismatch("metric g must be defined on the independent chart");
  if (!(chart_of(H) == u)) throw ChartMismatch("H must be defined on the dependent chart");
  for (const auto& s : x.coords)
    if (contains(u.coords, s) || s == t) throw ValidationError("coordinate '" + s.name() + "' declared twice");
  if (F.size() != m())
    throw ValidationError("F has " + std::to_string(F.size()) + " components but there are " +
                          std::to_string(m()) + " dependent variables");
  std::vector<Symbol> base = x.coords;
  base.push_back(t);
  base.insert(base.end(), u.coords.begin(), u.coords.end());
  for (const auto& f : F)
    for (const auto& s : f.free_symbols()) {
      if (s.kind() == SymbolKind::Jet) throw ValidationError("F must not contain jet variables");
      if (!contains(base, s))
        throw ValidationError("F depends on '" + s.name() + "', which is not t, x or u");
    }
  if (const auto* hm = std::get_if<Metric>(&H)) h_metric_ = *hm;
  coeffs_.ginv = inverse_metric(g);
  coeffs_.gamma = contracted_connection(g);
  coeffs_.gamma_u = gamma_u_.components;
  coeffs_.F = F;
}

bool BimetricSystem::is_free() const {
  return std::all_of(F.begin(), F.end(), [](const Expr& f) { return f.is_zero(); });
}

std::vector<Expr> build_Q(const EvolutionCoefficients& c, const JetContext& jets) {
  const std::size_t n = jets.n();
  const std::size_t m = jets.m();
  std::vector<Expr> Q(m);
  for (std::size_t a = 0; a < m; ++a) {
    Expr q;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (c.ginv[i][j].is_zero()) continue;
        q += c.ginv[i][j] * Expr(jets.uxx(a, i, j));
        Expr quad;
        for (std::size_t b = 0; b < m; ++b)
          for (std::size_t cc = 0; cc < m; ++cc)
            if (!c.gamma_u[a][b][cc].is_zero())
              quad += c.gamma_u[a][b][cc] * Expr(jets.ux(b, i)) * Expr(jets.ux(cc, j));
        q += c.ginv[i][j] * quad;
      }
    for (std::size_t i = 0; i < n; ++i)
      if (!c.gamma[i].is_zero()) q -= c.gamma[i] * Expr(jets.ux(a, i));
    q += c.F[a];
    q -= Expr(jets.ut(a));
    Q[a] = q;
  }
  return Q;
}

std::vector<Expr> build_Q(const BimetricSystem& sys) { return build_Q(sys.coefficients(), sys.jets()); }

Substitution solve_for_ut(const std::vector<Expr>& Q, const JetContext& jets) {
  if (Q.size() != jets.m()) throw MalformedSystem("expected one equation per dependent variable");
  Substitution s;
  for (std::size_t a = 0; a < Q.size(); ++a) {
    for (std::size_t b = 0; b < Q.size(); ++b) {
      Expr c = diff(Q[a], jets.ut(b));
      if (!(c == Expr(a == b ? -1 : 0)))
        throw MalformedSystem("coefficient of " + jets.ut(b).name() + " in equation " + std::to_string(a + 1) +
                              " is " + c.to_string() + ", expected " + (a == b ? "-1" : "0"));
    }
    s.vars.emplace(jets.ut(a), Q[a] + Expr(jets.ut(a)));
  }
  return s;
}

}  // namespace liesym
