#include "liesym/geometry.hpp"

#include <algorithm>
#include <set>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

bool only_depends_on(const Expr& e, const std::vector<Symbol>& coords) {
  for (const auto& s : e.free_symbols())
    if (std::find(coords.begin(), coords.end(), s) == coords.end()) return false;
  return true;
}

void require_chart(const Chart& a, const Chart& b) {
  if (!(a == b)) throw ChartMismatch("vector field and tensor live on different charts");
}

}  // namespace

Chart::Chart(std::vector<Symbol> c) : coords(std::move(c)) {
  std::set<Symbol> seen(coords.begin(), coords.end());
  if (seen.size() != coords.size()) throw ValidationError("chart coordinates must be distinct");
  if (coords.empty()) throw ValidationError("chart must have positive dimension");
}

Metric::Metric(Chart c, ExprMatrix g) : chart(std::move(c)), components(std::move(g)) {
  const std::size_t n = chart.dimension();
  if (components.size() != n) throw ValidationError("metric size does not match chart dimension");
  for (std::size_t i = 0; i < n; ++i) {
    if (components[i].size() != n) throw ValidationError("metric size does not match chart dimension");
    for (std::size_t j = 0; j < n; ++j) {
      if (!(components[i][j] == components[j][i])) throw ValidationError("metric is not symmetric");
      if (!only_depends_on(components[i][j], chart.coords))
        throw CouplingViolation("metric component " + components[i][j].to_string() +
                                " depends on symbols outside its chart");
    }
  }
  if (determinant(components).is_zero()) throw SingularMetric("metric determinant vanishes");
}

Connection::Connection(Chart c, std::vector<ExprMatrix> gamma) : chart(std::move(c)), components(std::move(gamma)) {
  const std::size_t n = chart.dimension();
  if (components.size() != n) throw ValidationError("connection size does not match chart dimension");
  for (std::size_t i = 0; i < n; ++i) {
    if (components[i].size() != n) throw ValidationError("connection size does not match chart dimension");
    for (std::size_t j = 0; j < n; ++j) {
      if (components[i][j].size() != n) throw ValidationError("connection size does not match chart dimension");
      for (std::size_t k = 0; k < n; ++k) {
        if (!(components[i][j][k] == components[i][k][j]))
          throw ValidationError("connection is not symmetric in its lower indices");
        if (!only_depends_on(components[i][j][k], chart.coords))
          throw CouplingViolation("connection component depends on symbols outside its chart");
      }
    }
  }
}

bool Connection::is_zero() const {
  for (const auto& m : components)
    for (const auto& row : m)
      for (const auto& e : row)
        if (!e.is_zero()) return false;
  return true;
}

bool VectorFieldGeo::is_zero() const {
  return std::all_of(components.begin(), components.end(), [](const Expr& e) { return e.is_zero(); });
}

std::string VectorFieldGeo::to_string() const {
  std::vector<std::pair<Expr, std::string>> terms;
  for (std::size_t i = 0; i < components.size(); ++i) terms.emplace_back(components[i], "d/d" + chart.coords[i].name());
  return format_combination(terms);
}

std::string to_string(CollineationKind k) {
  switch (k) {
    case CollineationKind::KV:
      return "KV";
    case CollineationKind::HV:
      return "HV";
    case CollineationKind::CKV:
      return "CKV";
    case CollineationKind::AC:
      return "AC";
  }
  return "?";
}

CollineationKind parse_collineation_kind(const std::string& s) {
  for (auto k : {CollineationKind::KV, CollineationKind::HV, CollineationKind::CKV, CollineationKind::AC})
    if (to_string(k) == s) return k;
  throw ValidationError("unknown collineation kind '" + s + "' (expected KV, HV, CKV or AC)");
}

ExprMatrix inverse_metric(const Metric& g) { return inverse(g.components); }

Connection christoffel(const Metric& g) {
  const std::size_t n = g.chart.dimension();
  const auto& x = g.chart.coords;
  ExprMatrix ginv = inverse_metric(g);
  // dg[l][j][k] = g_lj,k
  std::vector<ExprMatrix> dg(n, ExprMatrix(n, std::vector<Expr>(n)));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) dg[l][j][k] = diff(g(l, j), x[k]);
  std::vector<ExprMatrix> gamma(n, ExprMatrix(n, std::vector<Expr>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        Expr sum;
        for (std::size_t l = 0; l < n; ++l) {
          if (ginv[i][l].is_zero()) continue;
          sum += ginv[i][l] * (dg[l][j][k] + dg[l][k][j] - dg[j][k][l]);
        }
        gamma[i][j][k] = sum * Rational(1, 2);
        gamma[i][k][j] = gamma[i][j][k];
      }
  return Connection(g.chart, std::move(gamma));
}

std::vector<Expr> contracted_connection(const Metric& g) {
  const std::size_t n = g.chart.dimension();
  ExprMatrix ginv = inverse_metric(g);
  Connection G = christoffel(g);
  std::vector<Expr> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!ginv[j][k].is_zero()) out[i] += ginv[j][k] * G(i, j, k);
  return out;
}

ExprMatrix lie_metric(const VectorFieldGeo& xi, const Metric& g) {
  require_chart(xi.chart, g.chart);
  const std::size_t n = g.chart.dimension();
  const auto& x = g.chart.coords;
  ExprMatrix dxi(n, std::vector<Expr>(n));  // dxi[k][i] = xi^k_,i
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) dxi[k][i] = diff(xi.components[k], x[i]);
  ExprMatrix out(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Expr s;
      for (std::size_t k = 0; k < n; ++k) {
        if (!xi.components[k].is_zero()) s += xi.components[k] * diff(g(i, j), x[k]);
        s += g(k, j) * dxi[k][i] + g(i, k) * dxi[k][j];
      }
      out[i][j] = s;
      out[j][i] = s;
    }
  return out;
}

std::vector<ExprMatrix> lie_connection(const VectorFieldGeo& eta, const Connection& G) {
  require_chart(eta.chart, G.chart);
  const std::size_t m = G.chart.dimension();
  const auto& u = G.chart.coords;
  ExprMatrix d1(m, std::vector<Expr>(m));  // d1[A][D] = eta^A_,D
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t d = 0; d < m; ++d) d1[a][d] = diff(eta.components[a], u[d]);
  const bool flat = G.is_zero();
  std::vector<ExprMatrix> out(m, ExprMatrix(m, std::vector<Expr>(m)));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = b; c < m; ++c) {
        Expr s = diff(d1[a][b], u[c]);
        if (!flat) {
          for (std::size_t d = 0; d < m; ++d) {
            if (!eta.components[d].is_zero()) s += eta.components[d] * diff(G(a, b, c), u[d]);
            s += -d1[a][d] * G(d, b, c) + d1[d][b] * G(a, d, c) + d1[d][c] * G(a, b, d);
          }
        }
        out[a][b][c] = s;
        out[a][c][b] = s;
      }
  return out;
}

std::vector<ExprMatrix> metric_covariant_derivative(const Metric& g, const Connection& G) {
  const std::size_t n = g.chart.dimension();
  const auto& x = g.chart.coords;
  std::vector<ExprMatrix> out(n, ExprMatrix(n, std::vector<Expr>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Expr s = diff(g(i, j), x[k]);
        for (std::size_t l = 0; l < n; ++l) s -= G(l, k, i) * g(l, j) + G(l, k, j) * g(i, l);
        out[i][j][k] = s;
      }
  return out;
}

std::vector<Expr> monomial_basis(const std::vector<Symbol>& vars, int degree) {
  std::vector<Expr> out;
  // Exponent vectors of each total degree in lexicographic order (earlier variables first).
  std::vector<int> exps(vars.size());
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int remaining) {
    if (pos + 1 == vars.size()) {
      exps[pos] = remaining;
      Expr m(1);
      for (std::size_t i = 0; i < vars.size(); ++i) m *= Expr(vars[i]).pow(exps[i]);
      out.push_back(m);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      exps[pos] = e;
      rec(pos + 1, remaining - e);
    }
  };
  for (int d = 0; d <= degree; ++d) {
    if (vars.empty()) {
      if (d == 0) out.emplace_back(1);
      continue;
    }
    rec(0, d);
  }
  return out;
}

namespace {

struct Ansatz {
  std::size_t components;
  std::vector<Expr> monomials;
  std::size_t field_columns() const { return components * monomials.size(); }
  VectorFieldGeo column_field(const Chart& chart, std::size_t k) const {
    VectorFieldGeo f{chart, std::vector<Expr>(components)};
    f.components[k / monomials.size()] = monomials[k % monomials.size()];
    return f;
  }
  VectorFieldGeo field(const Chart& chart, const std::vector<Rational>& v) const {
    VectorFieldGeo f{chart, std::vector<Expr>(components)};
    for (std::size_t k = 0; k < field_columns(); ++k)
      if (v[k] != 0) f.components[k / monomials.size()] += monomials[k % monomials.size()] * v[k];
    return f;
  }
};

std::vector<Expr> upper_triangle(const ExprMatrix& m) {
  std::vector<Expr> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j) out.push_back(m[i][j]);
  return out;
}

std::vector<Expr> flatten_connection(const std::vector<ExprMatrix>& c) {
  std::vector<Expr> out;
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b)
      for (std::size_t d = b; d < c.size(); ++d) out.push_back(c[a][b][d]);
  return out;
}

// Scales v to integer entries with gcd 1 and a positive first nonzero entry.
std::vector<Rational> primitive_vector(std::vector<Rational> v) {
  Integer den = 1;
  Integer num = 0;
  for (const auto& x : v) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), x.get_num_mpz_t());
  }
  if (num == 0) return v;
  Rational s(den, num);
  s.canonicalize();
  for (const auto& x : v)
    if (x != 0) {
      if (x < 0) s = -s;
      break;
    }
  for (auto& x : v) x *= s;
  return v;
}

std::optional<Expr> try_potential(const VectorFieldGeo& f, const Metric& g) {
  try {
    return gradient_decompose(f, g);
  } catch (const NotClosed&) {
    return std::nullopt;
  } catch (const NotIntegrable&) {
    return std::nullopt;
  }
}

}  // namespace

CollineationBasis solve_collineations(const Metric& g, CollineationKind kind, int degree,
                                      const AssemblyOptions& options) {
  if (degree < 0) throw ValidationError("ansatz degree must be nonnegative");
  if (kind == CollineationKind::AC) {
    CollineationBasis out = solve_collineations(christoffel(g), degree, options);
    for (auto& e : out.basis) e.potential = try_potential(e.field, g);
    return out;
  }
  const Chart& chart = g.chart;
  Ansatz ansatz{chart.dimension(), monomial_basis(chart.coords, degree)};
  const std::size_t nf = ansatz.field_columns();
  std::vector<Expr> factor_monomials;
  if (kind == CollineationKind::HV) factor_monomials = {Expr(1)};
  if (kind == CollineationKind::CKV) factor_monomials = monomial_basis(chart.coords, degree);
  const std::size_t total = nf + factor_monomials.size();

  auto columns = evaluate_columns(
      total,
      [&](std::size_t k) {
        if (k < nf) return upper_triangle(lie_metric(ansatz.column_field(chart, k), g));
        const Expr& psi = factor_monomials[k - nf];
        ExprMatrix m = g.components;
        for (auto& row : m)
          for (auto& e : row) e = e * psi * Expr(-2);
        return upper_triangle(m);
      },
      options.execution);
  auto null = column_nullspace(columns, options);

  auto factor_of = [&](const std::vector<Rational>& v) {
    Expr psi;
    for (std::size_t k = nf; k < total; ++k)
      if (v[k] != 0) psi += factor_monomials[k - nf] * v[k];
    return psi;
  };

  CollineationBasis out{kind, {}, {}};
  if (kind == CollineationKind::HV) {
    // Split the solution space into psi = 0 (Killing) and one representative with psi = 1.
    std::vector<std::vector<Rational>> killing;
    std::optional<std::vector<Rational>> homothetic;
    for (auto& v : null) {
      if (v[nf] == 0) {
        killing.push_back(v);
      } else if (!homothetic) {
        Rational s = 1 / v[nf];
        for (auto& x : v) x *= s;
        homothetic = v;
      }
    }
    for (auto& v : row_echelon_basis(killing)) {
      VectorFieldGeo f = ansatz.field(chart, primitive_vector(v));
      out.killing.push_back({f, std::nullopt, try_potential(f, g)});
    }
    if (homothetic) {
      // Canonical representative: reduce modulo the Killing span.
      SparseEchelon ech(total);
      for (const auto& v : killing) ech.add_row(to_sparse(v));
      SparseRow r = ech.reduce(to_sparse(*homothetic));
      std::vector<Rational> v(total);
      for (const auto& [c, x] : r) v[c] = x;
      VectorFieldGeo f = ansatz.field(chart, v);
      out.basis.push_back({f, Expr(1), try_potential(f, g)});
    }
    return out;
  }
  for (auto& v : row_echelon_basis(null)) {
    auto p = primitive_vector(v);
    VectorFieldGeo f = ansatz.field(chart, p);
    CollineationElement e{f, std::nullopt, std::nullopt};
    if (kind == CollineationKind::CKV) e.factor = factor_of(p);
    if (kind == CollineationKind::KV) e.potential = try_potential(f, g);
    out.basis.push_back(std::move(e));
  }
  return out;
}

CollineationBasis solve_collineations(const Connection& G, int degree, const AssemblyOptions& options) {
  if (degree < 0) throw ValidationError("ansatz degree must be nonnegative");
  const Chart& chart = G.chart;
  Ansatz ansatz{chart.dimension(), monomial_basis(chart.coords, degree)};
  auto columns = evaluate_columns(
      ansatz.field_columns(),
      [&](std::size_t k) { return flatten_connection(lie_connection(ansatz.column_field(chart, k), G)); },
      options.execution);
  CollineationBasis out{CollineationKind::AC, {}, {}};
  for (auto& v : row_echelon_basis(column_nullspace(columns, options)))
    out.basis.push_back({ansatz.field(chart, primitive_vector(v)), std::nullopt, std::nullopt});
  return out;
}

namespace {

// Coefficients of e as a polynomial in v (index = power); e must be polynomial in v.
std::vector<Expr> coefficients_in(const Expr& e, const Symbol& v) {
  std::vector<Expr> out;
  for (const auto& [mono, c] : collect(e, {v})) {
    std::size_t k = static_cast<std::size_t>(mono.degree());
    if (out.size() <= k) out.resize(k + 1);
    out[k] = c;
  }
  return out;
}

Expr from_coefficients(const std::vector<Expr>& c, const Symbol& v) {
  Expr out;
  for (std::size_t k = c.size(); k-- > 0;) out = out * Expr(v) + c[k];
  return out;
}

// Antiderivative in v of a rational function; throws NotIntegrable if a logarithmic part remains.
Expr antiderivative(const Expr& e, const Symbol& v) {
  if (!e.depends_on(v)) return e * Expr(v);
  Poly den = e.denominator();
  if (!Expr(den).depends_on(v)) {
    Expr out;
    for (const auto& [mono, c] : collect(Expr(e.numerator()), {v})) {
      long k = mono.degree();
      out += c * Expr(v).pow(static_cast<int>(k + 1)) * Rational(1, k + 1);
    }
    return out / Expr(den);
  }
  // Split off the polynomial part in v.
  std::vector<Expr> num = coefficients_in(Expr(e.numerator()), v);
  std::vector<Expr> d = coefficients_in(Expr(den), v);
  std::vector<Expr> quotient;
  const std::size_t dd = d.size() - 1;
  if (num.size() > dd) {
    quotient.resize(num.size() - dd);
    for (std::size_t k = num.size(); k > dd;) {
      --k;
      Expr q = num[k] / d.back();
      quotient[k - dd] = q;
      for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= q * d[j];
    }
    num.resize(dd);
  }
  Expr result = antiderivative(from_coefficients(quotient, v), v);
  Expr remainder = from_coefficients(num, v);
  if (remainder.is_zero()) return result;
  // Horowitz-Ostrogradsky: r/D = (A/Dm)' + B/Ds with Dm = gcd(D, D'), Ds = D/Dm.
  Poly dv = den.derivative(Atom(v));
  Poly dm = gcd(den, dv);
  Poly ds = *den.divide_exact(dm);
  Poly dm_prime = dm.derivative(Atom(v));
  Poly h = *(ds * dm_prime).divide_exact(dm);
  const int p = dm.degree_in(Atom(v));
  const int q = ds.degree_in(Atom(v));
  const std::size_t unknowns = static_cast<std::size_t>(p + q);
  // Columns: a_0..a_{p-1}, b_0..b_{q-1}; rows: powers v^0..v^{p+q-1}.
  ExprMatrix m(unknowns, std::vector<Expr>(unknowns + 1));
  auto place = [&](const Expr& poly, std::size_t col) {
    auto c = coefficients_in(poly, v);
    for (std::size_t r = 0; r < c.size(); ++r) {
      if (r >= unknowns) {
        if (!c[r].is_zero()) throw NotIntegrable("antiderivative system is inconsistent");
        continue;
      }
      m[r][col] = c[r];
    }
  };
  const Expr V(v);
  for (int k = 0; k < p; ++k) {
    Expr a = V.pow(k);
    place(diff(a, v) * Expr(ds) - a * Expr(h), static_cast<std::size_t>(k));
  }
  for (int k = 0; k < q; ++k) place(V.pow(k) * Expr(dm), static_cast<std::size_t>(p + k));
  auto rhs = coefficients_in(remainder, v);
  for (std::size_t r = 0; r < rhs.size() && r < unknowns; ++r) m[r][unknowns] = rhs[r];
  // Gauss-Jordan over the rational function field.
  for (std::size_t c = 0, r = 0; c < unknowns; ++c, ++r) {
    std::size_t piv = r;
    while (piv < unknowns && m[piv][c].is_zero()) ++piv;
    if (piv == unknowns) throw NotIntegrable("antiderivative system is singular");
    std::swap(m[piv], m[r]);
    for (std::size_t i = 0; i < unknowns; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Expr f = m[i][c] / m[r][c];
      for (std::size_t j = c; j <= unknowns; ++j) m[i][j] -= f * m[r][j];
    }
  }
  for (int k = 0; k < q; ++k)
    if (!m[static_cast<std::size_t>(p + k)][unknowns].is_zero())
      throw NotIntegrable("potential has a logarithmic part");
  Expr a;
  for (int k = 0; k < p; ++k) {
    std::size_t i = static_cast<std::size_t>(k);
    a += m[i][unknowns] / m[i][i] * V.pow(k);
  }
  return result + a / Expr(dm);
}

}  // namespace

Expr gradient_decompose(const VectorFieldGeo& zeta, const Metric& g) {
  require_chart(zeta.chart, g.chart);
  const std::size_t n = g.chart.dimension();
  const auto& x = g.chart.coords;
  std::vector<Expr> omega(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!zeta.components[j].is_zero()) omega[i] += g(i, j) * zeta.components[j];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(diff(omega[i], x[j]) == diff(omega[j], x[i])))
        throw NotClosed("lowered field " + zeta.to_string() + " is not closed");
  auto is_potential = [&](const Expr& phi) {
    for (std::size_t i = 0; i < n; ++i)
      if (!(diff(phi, x[i]) == omega[i])) return false;
    return true;
  };
  // Integrate along each coordinate, subtracting what earlier steps already produced.
  Expr phi;
  for (std::size_t i = 0; i < n; ++i) {
    Expr r = omega[i] - diff(phi, x[i]);
    if (!r.is_zero()) phi += antiderivative(r, x[i]);
  }
  if (!is_potential(phi)) throw NotIntegrable("potential could not be reconstructed");
  return phi;
}

std::vector<CollineationElement> gradient_subspace(const std::vector<VectorFieldGeo>& fields, const Metric& g,
                                                   const AssemblyOptions& options) {
  const std::size_t n = g.chart.dimension();
  const auto& x = g.chart.coords;
  auto columns = evaluate_columns(
      fields.size(),
      [&](std::size_t k) {
        std::vector<Expr> omega(n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) omega[i] += g(i, j) * fields[k].components[j];
        std::vector<Expr> curl;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j) curl.push_back(diff(omega[i], x[j]) - diff(omega[j], x[i]));
        if (curl.empty()) curl.emplace_back();
        return curl;
      },
      options.execution);
  std::vector<CollineationElement> out;
  for (auto& v : row_echelon_basis(column_nullspace(columns, options))) {
    auto p = primitive_vector(v);
    VectorFieldGeo f{g.chart, std::vector<Expr>(n)};
    for (std::size_t k = 0; k < fields.size(); ++k)
      if (p[k] != 0)
        for (std::size_t i = 0; i < n; ++i) f.components[i] += fields[k].components[i] * p[k];
    if (f.is_zero()) continue;
    if (auto phi = try_potential(f, g)) out.push_back({f, std::nullopt, *phi});
  }
  return out;
}

std::vector<std::vector<ExprMatrix>> riemann(const Metric& g) {
  const std::size_t n = g.chart.dimension();
  const auto& x = g.chart.coords;
  Connection G = christoffel(g);
  std::vector<std::vector<ExprMatrix>> r(n, std::vector<ExprMatrix>(n, ExprMatrix(n, std::vector<Expr>(n))));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          Expr s = diff(G(i, l, j), x[k]) - diff(G(i, k, j), x[l]);
          for (std::size_t m = 0; m < n; ++m) s += G(i, k, m) * G(m, l, j) - G(i, l, m) * G(m, k, j);
          r[i][j][k][l] = s;
          r[i][j][l][k] = -s;
        }
  return r;
}

MaximalSymmetry maximal_symmetry_test(const Metric& g) {
  const std::size_t n = g.chart.dimension();
  if (n < 2) throw ValidationError("maximal symmetry test needs dimension >= 2");
  auto r = riemann(g);
  // Lowered R_ijkl = g_im R^m_jkl.
  auto lowered = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    Expr s;
    for (std::size_t m = 0; m < n; ++m) s += g(i, m) * r[m][j][k][l];
    return s;
  };
  auto frame = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return g(i, k) * g(j, l) - g(i, l) * g(j, k);
  };
  Expr K = lowered(0, 1, 0, 1) / frame(0, 1, 0, 1);
  MaximalSymmetry out;
  if (!K.is_constant()) return out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (!(lowered(i, j, k, l) == K * frame(i, j, k, l))) return out;
  out.is_maximal = true;
  out.curvature_constant = K;
  return out;
}

}  // namespace liesym
