#include "liesym/symmetry.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

std::vector<Symbol> coordinates(const JetContext& jets) {
  std::vector<Symbol> c{jets.time()};
  c.insert(c.end(), jets.space().begin(), jets.space().end());
  c.insert(c.end(), jets.dependent().begin(), jets.dependent().end());
  return c;
}

Expr monomial_expr(const Monomial& m, const Rational& c) { return Expr(Poly(m, c)); }

Poly lcm(const Poly& a, const Poly& b) {
  Poly g = gcd(a, b);
  return primitive(*a.divide_exact(g) * b);
}

// Integer entries with gcd 1 over the first `upto` entries, first nonzero of them positive.
void scale_primitive(std::vector<Rational>& v, std::size_t upto) {
  Integer den = 1;
  Integer num = 0;
  for (std::size_t k = 0; k < upto; ++k) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v[k].get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v[k].get_num_mpz_t());
  }
  if (num == 0) return;
  Rational s(den, num);
  s.canonicalize();
  for (std::size_t k = 0; k < upto; ++k)
    if (v[k] != 0) {
      if (v[k] < 0) s = -s;
      break;
    }
  for (auto& x : v) x *= s;
}

// Coordinates of generators over shared (component, monomial) keys after clearing each
// component's common denominator. Keys a sigma-type generator must avoid (spatial and time
// components, and dependent components that involve u) come first.
struct GeneratorSpace {
  std::size_t n = 0, m = 0;
  std::vector<std::pair<std::size_t, Monomial>> keys;
  std::size_t nontrivial = 0;
  std::vector<Expr> denominators;
  std::vector<std::vector<Rational>> vectors;

  GeneratorSpace(const std::vector<Generator>& gens, const JetContext& jets) : n(jets.n()), m(jets.m()) {
    const std::size_t comps = 1 + n + m;
    std::vector<Poly> dens(comps, Poly(Rational(1)));
    for (const auto& g : gens) {
      auto c = g.components();
      if (c.size() != comps) throw ChartMismatch("generator does not match the system's chart");
      for (std::size_t a = 0; a < comps; ++a) dens[a] = lcm(dens[a], c[a].denominator());
    }
    std::vector<bool> u_den(comps, false);
    for (std::size_t a = 0; a < comps; ++a) {
      denominators.emplace_back(dens[a]);
      for (const auto& u : jets.dependent()) u_den[a] = u_den[a] || denominators[a].depends_on(u);
    }
    std::vector<std::map<std::pair<std::size_t, Monomial>, Rational>> entries;
    std::set<std::pair<std::size_t, Monomial>> all;
    for (const auto& g : gens) {
      auto c = g.components();
      std::map<std::pair<std::size_t, Monomial>, Rational> e;
      for (std::size_t a = 0; a < comps; ++a) {
        Expr p = c[a] * denominators[a];
        Rational d = p.denominator().constant_value();
        for (const auto& term : p.numerator().terms()) {
          e[{a, term.mono}] = term.coeff / d;
          all.insert({a, term.mono});
        }
      }
      entries.push_back(std::move(e));
    }
    auto involves_u = [&](const Monomial& mono) {
      for (const auto& [atom, k] : mono.factors())
        if (atom.is_symbol() && atom.symbol().kind() == SymbolKind::Dependent) return true;
      return false;
    };
    std::vector<std::pair<std::size_t, Monomial>> first, second;
    for (const auto& k : all) {
      bool hard = k.first < 1 + n || u_den[k.first] || involves_u(k.second);
      (hard ? first : second).push_back(k);
    }
    nontrivial = first.size();
    keys = first;
    keys.insert(keys.end(), second.begin(), second.end());
    std::map<std::pair<std::size_t, Monomial>, std::size_t> index;
    for (std::size_t k = 0; k < keys.size(); ++k) index[keys[k]] = k;
    for (const auto& e : entries) {
      std::vector<Rational> v(keys.size());
      for (const auto& [key, c] : e) v[index.at(key)] = c;
      vectors.push_back(std::move(v));
    }
  }

  Generator generator(const std::vector<Rational>& v) const {
    std::vector<Expr> c(1 + n + m);
    for (std::size_t k = 0; k < keys.size(); ++k)
      if (v[k] != 0) c[keys[k].first] += monomial_expr(keys[k].second, v[k]);
    for (std::size_t a = 0; a < c.size(); ++a) c[a] = c[a] / denominators[a];
    return Generator::from_components(c, n, m);
  }

  static bool leading_in(const std::vector<Rational>& v, std::size_t end) {
    for (std::size_t k = 0; k < end; ++k)
      if (v[k] != 0) return true;
    return false;
  }
};

std::size_t span_rank(const std::vector<std::vector<Rational>>& vs, std::size_t width) {
  SparseEchelon e(width);
  for (const auto& v : vs) e.add_row(to_sparse(v));
  return e.rank();
}

// ---------------------------------------------------------------------------
// Collineation ansatz

struct Column {
  enum class Kind { Alpha0, Spatial, Affine, Gradient, Sigma } kind;
  std::size_t index = 0;
  Expr factor;
  std::vector<Expr> sigma;
};

struct GradientPair {
  std::size_t spatial;
  VectorFieldGeo Y;
};

struct Plan {
  std::vector<Provenance::Spatial> spatial;  // T unused
  std::vector<VectorFieldGeo> affine;
  std::vector<GradientPair> gradient;
  std::vector<Column> columns;

  Provenance provenance(const std::vector<Rational>& v, std::size_t m) const {
    Provenance p;
    std::vector<Expr> T(spatial.size()), a(affine.size()), c(gradient.size());
    p.sigma.assign(m, Expr());
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (v[k] == 0) continue;
      const Column& col = columns[k];
      Expr w = col.factor * Expr(v[k]);
      switch (col.kind) {
        case Column::Kind::Alpha0:
          p.alpha0 += Expr(v[k]);
          break;
        case Column::Kind::Spatial:
          T[col.index] += w;
          break;
        case Column::Kind::Affine:
          a[col.index] += w;
          break;
        case Column::Kind::Gradient:
          c[col.index] += w;
          break;
        case Column::Kind::Sigma:
          for (std::size_t b = 0; b < m; ++b) p.sigma[b] += col.sigma[b] * Expr(v[k]);
          break;
      }
    }
    for (std::size_t s = 0; s < spatial.size(); ++s)
      if (!T[s].is_zero()) p.spatial.push_back({spatial[s].zeta, spatial[s].psi, T[s]});
    for (std::size_t l = 0; l < affine.size(); ++l)
      if (!a[l].is_zero()) p.affine.push_back({affine[l], a[l]});
    for (std::size_t q = 0; q < gradient.size(); ++q)
      if (!c[q].is_zero())
        p.gradient.push_back({*spatial[gradient[q].spatial].zeta.potential, gradient[q].Y, c[q]});
    return p;
  }
};

Expr integrate_from_zero(const Expr& poly, const Symbol& t) {
  Expr out;
  for (const auto& [mono, c] : collect(poly, {t})) {
    int k = mono.degree();
    out += c * Expr(t).pow(k + 1) * Rational(1, k + 1);
  }
  return out;
}

std::vector<Expr> time_powers(const Symbol& t, int degree) {
  std::vector<Expr> out;
  for (int p = 0; p <= degree; ++p) out.push_back(Expr(t).pow(p));
  return out;
}

void add_spatial(Plan& plan, const CollineationElement& e, const Expr& psi) {
  plan.spatial.push_back({e, psi, Expr()});
}

// Solves for the columns' coefficients and returns canonical verified candidates.
std::vector<SymmetryCandidate> solve_plan(const BimetricSystem& sys, const Plan& plan,
                                          const AssemblyOptions& options) {
  const auto& jets = sys.jets();
  const std::size_t N = plan.columns.size();
  const std::size_t m = sys.m();
  SymmetryCondition cond(sys);
  auto column_generator = [&](std::size_t k) {
    std::vector<Rational> e(N);
    e[k] = 1;
    return instantiate(plan.provenance(e, m), jets);
  };
  auto columns = evaluate_columns(
      N,
      [&](std::size_t k) {
        Generator G = column_generator(k);
        auto r = cond.residual(G);
        auto c = constraint_residual(G, sys);
        r.insert(r.end(), c.begin(), c.end());
        return r;
      },
      options.execution);
  auto null = column_nullspace(columns, options);

  std::vector<Generator> gens;
  for (const auto& v : null) gens.push_back(instantiate(plan.provenance(v, m), jets));
  GeneratorSpace space(gens, jets);
  const std::size_t K = space.keys.size();
  std::vector<std::vector<Rational>> rows;
  for (std::size_t s = 0; s < null.size(); ++s) {
    std::vector<Rational> row = space.vectors[s];
    row.insert(row.end(), null[s].begin(), null[s].end());
    rows.push_back(std::move(row));
  }
  std::vector<SymmetryCandidate> out;
  for (auto& row : row_echelon_basis(rows)) {
    if (!GeneratorSpace::leading_in(row, K)) continue;
    scale_primitive(row, K);
    std::vector<Rational> v(row.begin() + static_cast<std::ptrdiff_t>(K), row.end());
    SymmetryCandidate c;
    c.provenance = plan.provenance(v, m);
    c.generator = instantiate(c.provenance, jets);
    if (!(c.generator == space.generator(row))) throw Error("assembled generator differs from its provenance");
    if (!verify_symmetry(c.generator, sys).is_symmetry) throw Error("assembled generator failed verification");
    c.provenance.lambda = multiplier_form(c.generator, sys).lambda;
    out.push_back(std::move(c));
  }
  return out;
}

Column sigma_column(std::size_t a, const Expr& mono, std::size_t m) {
  Column c{Column::Kind::Sigma, 0, Expr(), std::vector<Expr>(m)};
  c.sigma[a] = mono;
  return c;
}

// True if some verified sigma-type generator of degree <= degree + 1 lies outside span(trivial).
bool trivial_family_grows(const BimetricSystem& sys, const std::vector<Generator>& trivial, int degree,
                          const AssemblyOptions& options) {
  if (trivial.empty()) return false;
  const auto& jets = sys.jets();
  for (const auto& s : solve_sigma_polynomial(sys, degree + 1, options)) {
    Generator G{Expr(), std::vector<Expr>(sys.n()), s};
    if (!verify_symmetry(G, sys).is_symmetry) continue;
    std::vector<Generator> all = trivial;
    all.push_back(G);
    GeneratorSpace space(all, jets);
    if (span_rank(space.vectors, space.keys.size()) > trivial.size()) return true;
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Provenance

Generator instantiate(const Provenance& p, const JetContext& jets) {
  const std::size_t n = jets.n(), m = jets.m();
  if (!p.sigma.empty() && p.sigma.size() != m) throw MissingProvenance("sigma must have one entry per dependent variable");
  Generator X{p.alpha0, std::vector<Expr>(n), std::vector<Expr>(m)};
  for (const auto& s : p.spatial) {
    if (s.zeta.field.components.size() != n) throw ChartMismatch("spatial field does not match the chart");
    X.xi_t += Expr(2) * s.psi * integrate_from_zero(s.T, jets.time());
    for (std::size_t i = 0; i < n; ++i) X.xi[i] += s.T * s.zeta.field.components[i];
  }
  for (const auto& a : p.affine) {
    if (a.Z.components.size() != m) throw ChartMismatch("dependent field does not match the chart");
    for (std::size_t b = 0; b < m; ++b) X.eta[b] += a.coefficient * a.Z.components[b];
  }
  for (const auto& g : p.gradient)
    for (std::size_t b = 0; b < m; ++b) X.eta[b] -= g.coefficient * g.potential * g.Y.components[b];
  for (std::size_t b = 0; b < p.sigma.size(); ++b) X.eta[b] += p.sigma[b];
  return X;
}

CollineationData collineation_data(const BimetricSystem& sys, const SymmetryOptions& options) {
  CollineationData d;
  d.g_homothetic = solve_collineations(sys.g, CollineationKind::HV, options.degree, options.assembly);
  if (const auto& h = sys.dependent_metric()) {
    d.h_affine = solve_collineations(*h, CollineationKind::AC, options.degree, options.assembly);
    d.h_homothetic = solve_collineations(*h, CollineationKind::HV, options.degree, options.assembly);
  } else {
    d.h_affine = solve_collineations(sys.dependent_connection(), options.degree, options.assembly);
  }
  return d;
}

std::vector<Expr> constraint_residual(const Generator& X, const BimetricSystem& sys) {
  const auto& jets = sys.jets();
  const auto& c = sys.coefficients();
  const std::size_t n = sys.n(), m = sys.m();
  const auto& x = jets.space();
  const auto& u = jets.dependent();
  const Symbol& t = jets.time();
  std::vector<Expr> out(m);
  for (std::size_t a = 0; a < m; ++a) {
    const Expr& F = c.F[a];
    const Expr& eta = X.eta[a];
    Expr r = X.xi_t * diff(F, t) + diff(X.xi_t, t) * F - diff(eta, t);
    for (std::size_t k = 0; k < n; ++k) r += X.xi[k] * diff(F, x[k]) - c.gamma[k] * diff(eta, x[k]);
    for (std::size_t b = 0; b < m; ++b) r += X.eta[b] * diff(F, u[b]) - diff(eta, u[b]) * c.F[b];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!c.ginv[i][j].is_zero()) r += c.ginv[i][j] * diff(diff(eta, x[i]), x[j]);
    out[a] = r;
  }
  return out;
}

std::vector<Expr> constraint_residual(const SymmetryCandidate& c, const BimetricSystem& sys) {
  if (c.provenance.sigma.size() != sys.m()) throw MissingProvenance("candidate carries no sigma components");
  return constraint_residual(instantiate(c.provenance, sys.jets()), sys);
}

// ---------------------------------------------------------------------------
// Assemblers

std::vector<SymmetryCandidate> assemble_from_collineations(const BimetricSystem& sys, const SymmetryOptions& options) {
  if (options.degree < 0 || options.t_degree < 0) throw ValidationError("degrees must be nonnegative");
  const std::size_t m = sys.m();
  auto data = collineation_data(sys, options);
  Plan plan;
  for (const auto& k : data.g_homothetic.killing) add_spatial(plan, k, Expr(0));
  for (const auto& h : data.g_homothetic.basis) add_spatial(plan, h, Expr(1));
  for (const auto& z : data.h_affine.basis) plan.affine.push_back(z.field);
  std::vector<VectorFieldGeo> Y;
  if (data.h_homothetic) {
    for (const auto& y : data.h_homothetic->basis) Y.push_back(y.field);
  } else {
    for (const auto& z : data.h_affine.basis) Y.push_back(z.field);
  }
  for (std::size_t s = 0; s < plan.spatial.size(); ++s)
    if (plan.spatial[s].zeta.potential)
      for (const auto& y : Y) plan.gradient.push_back({s, y});

  const auto powers = time_powers(sys.t, options.t_degree);
  plan.columns.push_back({Column::Kind::Alpha0, 0, Expr(1), {}});
  for (std::size_t s = 0; s < plan.spatial.size(); ++s)
    for (const auto& p : powers) plan.columns.push_back({Column::Kind::Spatial, s, p, {}});
  for (std::size_t l = 0; l < plan.affine.size(); ++l)
    for (const auto& p : powers) plan.columns.push_back({Column::Kind::Affine, l, p, {}});
  for (std::size_t q = 0; q < plan.gradient.size(); ++q)
    for (const auto& p : powers) plan.columns.push_back({Column::Kind::Gradient, q, p, {}});
  std::vector<Symbol> tx{sys.t};
  tx.insert(tx.end(), sys.x.coords.begin(), sys.x.coords.end());
  const auto sigma_monomials = monomial_basis(tx, options.degree);
  for (std::size_t a = 0; a < m; ++a)
    for (const auto& mono : sigma_monomials) plan.columns.push_back(sigma_column(a, mono, m));
  return solve_plan(sys, plan, options.assembly);
}

std::vector<SymmetryCandidate> assemble_free_system(const BimetricSystem& sys, const SymmetryOptions& options) {
  if (!sys.is_free()) throw FNotZero("the closed form requires F = 0");
  auto data = collineation_data(sys, options);
  Plan plan;
  for (const auto& k : data.g_homothetic.killing) add_spatial(plan, k, Expr(0));
  for (const auto& h : data.g_homothetic.basis) add_spatial(plan, h, Expr(1));
  for (const auto& z : data.h_affine.basis) plan.affine.push_back(z.field);
  const std::size_t ac = plan.affine.size();
  if (data.h_homothetic)
    for (const auto& y : data.h_homothetic->basis) plan.affine.push_back(y.field);
  for (std::size_t s = 0; s < plan.spatial.size(); ++s)
    if (plan.spatial[s].zeta.potential)
      for (std::size_t l = ac; l < plan.affine.size(); ++l) plan.gradient.push_back({s, plan.affine[l]});

  const Expr t(sys.t);
  plan.columns.push_back({Column::Kind::Alpha0, 0, Expr(1), {}});
  for (std::size_t s = 0; s < plan.spatial.size(); ++s) {
    plan.columns.push_back({Column::Kind::Spatial, s, Expr(1), {}});
    if (plan.spatial[s].zeta.potential) plan.columns.push_back({Column::Kind::Spatial, s, t, {}});
  }
  for (std::size_t l = 0; l < ac; ++l) plan.columns.push_back({Column::Kind::Affine, l, Expr(1), {}});
  for (std::size_t l = ac; l < plan.affine.size(); ++l) plan.columns.push_back({Column::Kind::Affine, l, t, {}});
  for (std::size_t q = 0; q < plan.gradient.size(); ++q)
    plan.columns.push_back({Column::Kind::Gradient, q, Expr(1), {}});
  for (const auto& s : solve_sigma_polynomial(sys, options.degree, options.assembly))
    plan.columns.push_back({Column::Kind::Sigma, 0, Expr(), s});
  return solve_plan(sys, plan, options.assembly);
}

std::vector<std::vector<Expr>> solve_sigma_polynomial(const BimetricSystem& sys, int degree,
                                                      const AssemblyOptions& options) {
  if (degree < 0) throw ValidationError("degree must be nonnegative");
  const std::size_t m = sys.m(), n = sys.n();
  const auto& c = sys.coefficients();
  const auto& x = sys.x.coords;
  const auto& u = sys.u.coords;
  std::vector<Symbol> tx{sys.t};
  tx.insert(tx.end(), x.begin(), x.end());
  const auto monos = monomial_basis(tx, degree);
  const std::size_t N = m * monos.size();
  auto columns = evaluate_columns(
      N,
      [&](std::size_t k) {
        const std::size_t a = k / monos.size();
        const Expr& s = monos[k % monos.size()];
        std::vector<Expr> r(m);
        for (std::size_t b = 0; b < m; ++b) r[b] = s * diff(c.F[b], u[a]);
        r[a] -= diff(s, sys.t);
        for (std::size_t i = 0; i < n; ++i) {
          r[a] -= c.gamma[i] * diff(s, x[i]);
          for (std::size_t j = 0; j < n; ++j)
            if (!c.ginv[i][j].is_zero()) r[a] += c.ginv[i][j] * diff(diff(s, x[i]), x[j]);
        }
        return r;
      },
      options.execution);
  std::vector<std::vector<Expr>> out;
  for (auto& v : row_echelon_basis(column_nullspace(columns, options))) {
    scale_primitive(v, v.size());
    std::vector<Expr> s(m);
    for (std::size_t k = 0; k < N; ++k)
      if (v[k] != 0) s[k / monos.size()] += monos[k % monos.size()] * Expr(v[k]);
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lie algebra

Generator commutator(const Generator& X, const Generator& Y, const JetContext& jets) {
  const auto coords = coordinates(jets);
  auto cx = X.components();
  auto cy = Y.components();
  if (cx.size() != coords.size() || cy.size() != coords.size())
    throw ChartMismatch("generator does not match the system's chart");
  std::vector<Expr> out(coords.size());
  for (std::size_t mu = 0; mu < coords.size(); ++mu)
    for (std::size_t nu = 0; nu < coords.size(); ++nu) {
      if (!cx[nu].is_zero()) out[mu] += cx[nu] * diff(cy[mu], coords[nu]);
      if (!cy[nu].is_zero()) out[mu] -= cy[nu] * diff(cx[mu], coords[nu]);
    }
  return Generator::from_components(out, jets.n(), jets.m());
}

std::vector<Generator> LieAlgebra::finite() const {
  return {basis.begin(), basis.begin() + static_cast<std::ptrdiff_t>(finite_dimension)};
}

std::vector<Generator> LieAlgebra::trivial() const {
  return {basis.begin() + static_cast<std::ptrdiff_t>(finite_dimension), basis.end()};
}

LieAlgebra canonical_algebra(const std::vector<Generator>& generators, const JetContext& jets) {
  LieAlgebra out;
  if (generators.empty()) return out;
  GeneratorSpace space(generators, jets);
  for (auto& v : row_echelon_basis(space.vectors)) {
    scale_primitive(v, v.size());
    if (GeneratorSpace::leading_in(v, space.nontrivial)) ++out.finite_dimension;
    out.basis.push_back(space.generator(v));
  }
  return out;
}

std::vector<std::vector<std::vector<Rational>>> structure(const std::vector<Generator>& basis, const JetContext& jets,
                                                          bool modulo_trivial) {
  const std::size_t d = basis.size();
  std::vector<std::vector<std::vector<Rational>>> c(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d)));
  if (d == 0) return c;
  std::vector<Generator> all = basis;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      pairs.emplace_back(i, j);
      all.push_back(commutator(basis[i], basis[j], jets));
    }
  GeneratorSpace space(all, jets);
  const std::size_t K = modulo_trivial ? space.nontrivial : space.keys.size();
  SparseEchelon ech(K + d);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Rational> row(space.vectors[k].begin(), space.vectors[k].begin() + static_cast<std::ptrdiff_t>(K));
    row.resize(K + d);
    row[K + k] = 1;
    ech.add_row(to_sparse(row));
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& v = space.vectors[d + p];
    std::vector<Rational> row(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(K));
    row.resize(K + d);
    SparseRow r = ech.reduce(to_sparse(row));
    auto [i, j] = pairs[p];
    if (!r.empty() && r.front().first < K) throw AlgebraNotClosed(i, j);
    for (const auto& [col, val] : r) {
      c[i][j][col - K] = -val;
      c[j][i][col - K] = val;
    }
  }
  return c;
}

bool is_antisymmetric(const std::vector<std::vector<std::vector<Rational>>>& c) {
  const std::size_t d = c.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (c[i][j][k] != -c[j][i][k]) return false;
  return true;
}

bool satisfies_jacobi(const std::vector<std::vector<std::vector<Rational>>>& c) {
  const std::size_t d = c.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t mm = 0; mm < d; ++mm) {
          Rational s = 0;
          for (std::size_t l = 0; l < d; ++l)
            s += c[i][j][l] * c[l][k][mm] + c[j][k][l] * c[l][i][mm] + c[k][i][l] * c[l][j][mm];
          if (s != 0) return false;
        }
  return true;
}

LieAlgebra brute_force_symmetries(const BimetricSystem& sys, int degree, const AssemblyOptions& options) {
  if (degree < 0) throw ValidationError("degree must be nonnegative");
  const auto& jets = sys.jets();
  const auto coords = coordinates(jets);
  const auto monos = monomial_basis(coords, degree);
  const std::size_t comps = coords.size();
  SymmetryCondition cond(sys);
  auto column_generator = [&](std::size_t k) {
    std::vector<Expr> c(comps);
    c[k / monos.size()] = monos[k % monos.size()];
    return Generator::from_components(c, sys.n(), sys.m());
  };
  auto columns = evaluate_columns(
      comps * monos.size(), [&](std::size_t k) { return cond.residual(column_generator(k)); }, options.execution);
  std::vector<Generator> gens;
  for (const auto& v : column_nullspace(columns, options)) {
    std::vector<Expr> c(comps);
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k] != 0) c[k / monos.size()] += monos[k % monos.size()] * Expr(v[k]);
    gens.push_back(Generator::from_components(c, sys.n(), sys.m()));
  }
  LieAlgebra out = canonical_algebra(gens, jets);
  out.structure_constants = structure(out.finite(), jets, true);
  out.trivial_family_flag = trivial_family_grows(sys, out.trivial(), degree, options);
  return out;
}

LieAlgebra algebra_of(const std::vector<SymmetryCandidate>& candidates, const BimetricSystem& sys, int degree,
                      const AssemblyOptions& options) {
  std::vector<Generator> gens;
  for (const auto& c : candidates) gens.push_back(c.generator);
  LieAlgebra out = canonical_algebra(gens, sys.jets());
  out.structure_constants = structure(out.finite(), sys.jets(), true);
  out.trivial_family_flag = trivial_family_grows(sys, out.trivial(), degree, options);
  return out;
}

bool compare_algebras(const LieAlgebra& a, const LieAlgebra& b, const JetContext& jets) {
  std::vector<Generator> all = a.basis;
  all.insert(all.end(), b.basis.begin(), b.basis.end());
  if (all.empty()) return true;
  GeneratorSpace space(all, jets);
  const std::size_t K = space.keys.size();
  std::vector<std::vector<Rational>> trivial;
  for (auto& v : row_echelon_basis(space.vectors))
    if (!GeneratorSpace::leading_in(v, space.nontrivial)) trivial.push_back(v);
  auto with_trivial = [&](std::size_t begin, std::size_t end) {
    auto vs = trivial;
    vs.insert(vs.end(), space.vectors.begin() + static_cast<std::ptrdiff_t>(begin),
              space.vectors.begin() + static_cast<std::ptrdiff_t>(end));
    return span_rank(vs, K);
  };
  const std::size_t total = span_rank(space.vectors, K);
  const std::size_t na = a.basis.size();
  return with_trivial(0, na) == total && with_trivial(na, all.size()) == total;
}

std::size_t finite_quotient_dimension(const std::vector<Generator>& generators, const JetContext& jets) {
  return canonical_algebra(generators, jets).finite_dimension;
}

std::vector<Generator> solve_determining(const DeterminingSystem& sys, const OpaqueGenerator& unknown, int degree) {
  if (degree < 0) throw ValidationError("degree must be nonnegative");
  Substitution sub;
  std::vector<Symbol> coeffs;
  std::vector<std::vector<std::pair<Symbol, Expr>>> bodies;
  for (const auto& f : unknown.functions) {
    Expr body;
    std::vector<std::pair<Symbol, Expr>> terms;
    std::size_t k = 0;
    for (const auto& mono : monomial_basis(f.params(), degree)) {
      Symbol c = Symbol::unknown("c_" + f.name() + "_" + std::to_string(k++));
      coeffs.push_back(c);
      terms.emplace_back(c, mono);
      body += Expr(c) * mono;
    }
    sub.functions.emplace(f, body);
    bodies.push_back(std::move(terms));
  }
  std::vector<Expr> eqs;
  for (const auto& e : sys.equations) {
    Expr s = substitute(e.lhs, sub);
    if (!s.is_zero()) eqs.push_back(s);
  }
  auto components = unknown.generator.components();
  std::vector<Generator> out;
  for (const auto& sol : solve_linear(eqs, coeffs)) {
    Substitution values;
    for (std::size_t f = 0; f < unknown.functions.size(); ++f) {
      Expr body;
      for (const auto& [c, mono] : bodies[f]) {
        auto it = sol.find(c);
        if (it != sol.end()) body += mono * Expr(it->second);
      }
      values.functions.emplace(unknown.functions[f], body);
    }
    std::vector<Expr> c;
    for (const auto& comp : components) c.push_back(substitute(comp, values));
    out.push_back(Generator::from_components(c, unknown.generator.xi.size(), unknown.generator.eta.size()));
  }
  return out;
}

}  // namespace liesym
