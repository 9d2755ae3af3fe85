#include "liesym/prolongation.hpp"

#include <algorithm>
#include <map>

#include "liesym/errors.hpp"

namespace liesym {

// ---------------------------------------------------------------------------
// Generator

std::vector<Expr> Generator::components() const {
  std::vector<Expr> c;
  c.reserve(1 + xi.size() + eta.size());
  c.push_back(xi_t);
  c.insert(c.end(), xi.begin(), xi.end());
  c.insert(c.end(), eta.begin(), eta.end());
  return c;
}

Generator Generator::from_components(const std::vector<Expr>& c, std::size_t n, std::size_t m) {
  if (c.size() != 1 + n + m) throw ValidationError("generator needs " + std::to_string(1 + n + m) + " components");
  Generator X;
  X.xi_t = c[0];
  X.xi.assign(c.begin() + 1, c.begin() + 1 + static_cast<std::ptrdiff_t>(n));
  X.eta.assign(c.begin() + 1 + static_cast<std::ptrdiff_t>(n), c.end());
  return X;
}

bool Generator::is_zero() const {
  auto c = components();
  return std::all_of(c.begin(), c.end(), [](const Expr& e) { return e.is_zero(); });
}

Generator operator+(const Generator& a, const Generator& b) {
  auto ca = a.components();
  auto cb = b.components();
  if (ca.size() != cb.size()) throw ChartMismatch("generators live on different charts");
  for (std::size_t k = 0; k < ca.size(); ++k) ca[k] += cb[k];
  return Generator::from_components(ca, a.xi.size(), a.eta.size());
}

Generator operator*(const Expr& c, const Generator& a) {
  auto ca = a.components();
  for (auto& e : ca) e = c * e;
  return Generator::from_components(ca, a.xi.size(), a.eta.size());
}

std::string to_string(const Generator& X, const JetContext& jets) {
  std::vector<std::pair<Expr, std::string>> terms;
  terms.emplace_back(X.xi_t, "d/d" + jets.time().name());
  for (std::size_t i = 0; i < X.xi.size(); ++i) terms.emplace_back(X.xi[i], "d/d" + jets.space()[i].name());
  for (std::size_t a = 0; a < X.eta.size(); ++a) terms.emplace_back(X.eta[a], "d/d" + jets.dependent()[a].name());
  return format_combination(terms);
}

void validate_generator(const Generator& X, const JetContext& jets) {
  if (X.xi.size() != jets.n() || X.eta.size() != jets.m())
    throw ChartMismatch("generator has " + std::to_string(X.xi.size()) + "+" + std::to_string(X.eta.size()) +
                        " spatial and dependent components, expected " + std::to_string(jets.n()) + "+" +
                        std::to_string(jets.m()));
  auto own = [&](const Symbol& s) {
    if (s == jets.time()) return true;
    const auto& x = jets.space();
    const auto& u = jets.dependent();
    return std::find(x.begin(), x.end(), s) != x.end() || std::find(u.begin(), u.end(), s) != u.end();
  };
  for (const auto& c : X.components())
    for (const auto& s : c.free_symbols()) {
      if (s.kind() == SymbolKind::Jet) throw JetInGenerator("generator component depends on jet " + s.name());
      if (s.is_coordinate() && !own(s)) throw ChartMismatch("generator depends on foreign coordinate " + s.name());
    }
}

// ---------------------------------------------------------------------------
// Second extension

namespace {

/// Memoized components of the second extension. Direction 0 is t, directions 1..n are x^i.
class Prolonger {
 public:
  Prolonger(const Generator& X, const JetContext& jets) : jets_(jets), dirs_(jets.n() + 1), m_(jets.m()) {
    xi_.push_back(X.xi_t);
    xi_.insert(xi_.end(), X.xi.begin(), X.xi.end());
    eta_ = X.eta;
    for (const auto& e : xi_) {
      xa_.push_back(along_independent(e));
      xb_.push_back(along_dependent(e));
    }
    for (const auto& e : eta_) {
      ea_.push_back(along_independent(e));
      eb_.push_back(along_dependent(e));
    }
  }

  const Expr& first(std::size_t a, std::size_t alpha) {
    auto key = std::make_pair(a, alpha);
    if (auto it = eta1_.find(key); it != eta1_.end()) return it->second;
    // eta_{,alpha} + u^B_alpha eta_{,B} - xi^beta_{,alpha} u_beta - u_beta u^B_alpha xi^beta_{,B}
    Expr r = ea_[a][alpha];
    for (std::size_t b = 0; b < m_; ++b) r += u(b, alpha) * eb_[a][b];
    for (std::size_t be = 0; be < dirs_; ++be) {
      r -= xa_[be][alpha] * u(a, be);
      for (std::size_t b = 0; b < m_; ++b)
        if (!xb_[be][b].is_zero()) r -= u(a, be) * u(b, alpha) * xb_[be][b];
    }
    return eta1_.emplace(key, r).first->second;
  }

  const Expr& second(std::size_t a, std::size_t alpha, std::size_t beta) {
    if (alpha > beta) std::swap(alpha, beta);
    auto key = std::make_tuple(a, alpha, beta);
    if (auto it = eta2_.find(key); it != eta2_.end()) return it->second;
    const std::size_t al = alpha, be = beta;
    Expr r = d_ind(ea_[a][al], be);
    for (std::size_t b = 0; b < m_; ++b) {
      // 2 eta_{,B(alpha} u^B_{beta)}
      r += d_ind(eb_[a][b], al) * u(b, be) + d_ind(eb_[a][b], be) * u(b, al);
      for (std::size_t c = 0; c < m_; ++c) {
        Expr ebc = d_dep(eb_[a][b], c);
        if (!ebc.is_zero()) r += ebc * u(b, al) * u(c, be);
      }
      r += eb_[a][b] * uu(b, al, be);
    }
    for (std::size_t g = 0; g < dirs_; ++g) {
      r -= d_ind(xa_[g][al], be) * u(a, g);
      // -2 xi^gamma_{,(beta} u_{alpha)gamma}
      r -= xa_[g][be] * uu(a, al, g) + xa_[g][al] * uu(a, be, g);
      for (std::size_t b = 0; b < m_; ++b) {
        if (xb_[g][b].is_zero()) continue;
        // -2 xi^gamma_{,(alpha|B|} u^B_{beta)} u_gamma
        r -= (d_ind(xb_[g][b], al) * u(b, be) + d_ind(xb_[g][b], be) * u(b, al)) * u(a, g);
        for (std::size_t c = 0; c < m_; ++c) {
          Expr xbc = d_dep(xb_[g][b], c);
          if (!xbc.is_zero()) r -= xbc * u(b, al) * u(c, be) * u(a, g);
        }
        r -= xb_[g][b] * (u(a, g) * uu(b, al, be) + u(b, be) * uu(a, al, g) + u(b, al) * uu(a, be, g));
      }
    }
    return eta2_.emplace(key, r).first->second;
  }

 private:
  Expr u(std::size_t a, std::size_t alpha) const { return Expr(jets_.first(a, alpha)); }
  Expr uu(std::size_t a, std::size_t alpha, std::size_t beta) const { return Expr(jets_.second(a, alpha, beta)); }
  Expr d_ind(const Expr& e, std::size_t alpha) const { return diff(e, jets_.independent(alpha)); }
  Expr d_dep(const Expr& e, std::size_t b) const { return diff(e, jets_.dependent()[b]); }
  std::vector<Expr> along_independent(const Expr& e) const {
    std::vector<Expr> out;
    for (std::size_t al = 0; al < dirs_; ++al) out.push_back(d_ind(e, al));
    return out;
  }
  std::vector<Expr> along_dependent(const Expr& e) const {
    std::vector<Expr> out;
    for (std::size_t b = 0; b < m_; ++b) out.push_back(d_dep(e, b));
    return out;
  }

  const JetContext& jets_;
  std::size_t dirs_;
  std::size_t m_;
  std::vector<Expr> xi_;
  std::vector<Expr> eta_;
  std::vector<std::vector<Expr>> xa_, xb_, ea_, eb_;
  std::map<std::pair<std::size_t, std::size_t>, Expr> eta1_;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Expr> eta2_;
};

}  // namespace

ProlongedGenerator prolong(const Generator& X, const JetContext& jets) {
  validate_generator(X, jets);
  Prolonger p(X, jets);
  const std::size_t dirs = jets.n() + 1;
  ProlongedGenerator out;
  out.base = X;
  out.eta1.resize(jets.m());
  out.eta2.assign(jets.m(), std::vector<std::vector<Expr>>(dirs, std::vector<Expr>(dirs)));
  for (std::size_t a = 0; a < jets.m(); ++a) {
    for (std::size_t al = 0; al < dirs; ++al) out.eta1[a].push_back(p.first(a, al));
    for (std::size_t al = 0; al < dirs; ++al)
      for (std::size_t be = al; be < dirs; ++be) out.eta2[a][al][be] = out.eta2[a][be][al] = p.second(a, al, be);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symmetry condition

SymmetryCondition::SymmetryCondition(std::vector<Expr> Q, JetContext jets)
    : Q_(std::move(Q)), jets_(std::move(jets)), on_solution_(solve_for_ut(Q_, jets_)) {
  std::vector<Symbol> coords{jets_.time()};
  coords.insert(coords.end(), jets_.space().begin(), jets_.space().end());
  coords.insert(coords.end(), jets_.dependent().begin(), jets_.dependent().end());
  for (const auto& q : Q_) {
    auto& cp = coordinate_partials_.emplace_back();
    for (std::size_t k = 0; k < coords.size(); ++k)
      if (Expr d = diff(q, coords[k]); !d.is_zero()) cp.emplace_back(k, d);
    auto& jp = jet_partials_.emplace_back();
    for (const auto& s : jets_.derivative_jets())
      if (Expr d = diff(q, s); !d.is_zero()) jp.emplace_back(s, d);
  }
}

SymmetryCondition::SymmetryCondition(const BimetricSystem& sys) : SymmetryCondition(build_Q(sys), sys.jets()) {}

std::vector<Expr> SymmetryCondition::unreduced(const Generator& X) const {
  validate_generator(X, jets_);
  Prolonger p(X, jets_);
  const auto comps = X.components();
  std::vector<Expr> out;
  out.reserve(Q_.size());
  for (std::size_t a = 0; a < Q_.size(); ++a) {
    Expr r;
    for (const auto& [k, d] : coordinate_partials_[a])
      if (!comps[k].is_zero()) r += comps[k] * d;
    for (const auto& [s, d] : jet_partials_[a]) {
      const auto& dirs = s.directions();
      const auto b = static_cast<std::size_t>(s.index());
      const Expr& e = dirs.size() == 1 ? p.first(b, static_cast<std::size_t>(dirs[0]))
                                       : p.second(b, static_cast<std::size_t>(dirs[0]), static_cast<std::size_t>(dirs[1]));
      if (!e.is_zero()) r += e * d;
    }
    out.push_back(r);
  }
  return out;
}

std::vector<Expr> SymmetryCondition::residual(const Generator& X) const {
  auto r = unreduced(X);
  for (auto& e : r) e = substitute(e, on_solution_);
  return r;
}

std::vector<Expr> apply_symmetry_condition(const ProlongedGenerator& PX, const BimetricSystem& sys) {
  return SymmetryCondition(sys).residual(PX.base);
}

VerificationResult verify_symmetry(const Generator& X, const BimetricSystem& sys) {
  VerificationResult out;
  out.residuals = SymmetryCondition(sys).residual(X);
  out.is_symmetry = std::all_of(out.residuals.begin(), out.residuals.end(), [](const Expr& e) { return e.is_zero(); });
  return out;
}

MultiplierForm multiplier_form(const Generator& X, const BimetricSystem& sys) {
  SymmetryCondition sc(sys);
  const auto& jets = sys.jets();
  const std::size_t m = jets.m();
  MultiplierForm out;
  out.residuals = sc.unreduced(X);
  out.lambda.assign(m, std::vector<Expr>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) out.lambda[a][b] = -diff(out.residuals[a], jets.ut(b));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) out.residuals[a] -= out.lambda[a][b] * sc.Q()[b];
  return out;
}

// ---------------------------------------------------------------------------
// Determining systems

std::map<std::string, std::vector<std::size_t>> DeterminingSystem::grouping() const {
  std::map<std::string, std::vector<std::size_t>> g;
  for (std::size_t k = 0; k < equations.size(); ++k) g[equations[k].group].push_back(k);
  return g;
}

std::vector<Expr> DeterminingSystem::lhs() const {
  std::vector<Expr> out;
  out.reserve(equations.size());
  for (const auto& e : equations) out.push_back(e.lhs);
  return out;
}

std::string jet_class(const Monomial& m) {
  int first = 0, second = 0;
  for (const auto& [atom, e] : m.factors()) {
    if (!atom.is_symbol() || atom.symbol().kind() != SymbolKind::Jet)
      throw ValidationError("jet_class: " + atom.to_string() + " is not a jet");
    (atom.symbol().jet_order() == 1 ? first : second) += e;
  }
  if (first == 0 && second == 0) return "1";
  std::string out;
  char letter = 'a';
  auto part = [&](int order) {
    if (!out.empty()) out += '*';
    out += "u_";
    for (int k = 0; k < order; ++k) out += letter++;
  };
  for (int k = 0; k < second; ++k) part(2);
  for (int k = 0; k < first; ++k) part(1);
  return out;
}

DeterminingSystem extract_determining(const std::vector<Expr>& residuals, const JetContext& jets,
                                      const std::vector<FunctionSymbol>& unknowns) {
  DeterminingSystem sys;
  sys.unknowns = unknowns;
  const auto& basis = jets.derivative_jets();
  for (std::size_t a = 0; a < residuals.size(); ++a)
    for (const auto& [mono, coeff] : collect(residuals[a], basis)) {
      if (coeff.is_zero()) continue;
      sys.equations.push_back({a, jet_class(mono), mono.is_one() ? "1" : mono.to_string(), coeff});
    }
  return sys;
}

OpaqueGenerator opaque_generator(const JetContext& jets) {
  std::vector<Symbol> args{jets.time()};
  args.insert(args.end(), jets.space().begin(), jets.space().end());
  args.insert(args.end(), jets.dependent().begin(), jets.dependent().end());
  std::vector<Expr> argx(args.begin(), args.end());
  OpaqueGenerator out;
  auto make = [&](const std::string& name) {
    FunctionSymbol f(name, args);
    out.functions.push_back(f);
    return Expr::apply(f, argx);
  };
  out.generator.xi_t = make("xi_" + jets.time().name());
  for (const auto& x : jets.space()) out.generator.xi.push_back(make("xi_" + x.name()));
  for (const auto& u : jets.dependent()) out.generator.eta.push_back(make("eta_" + u.name()));
  return out;
}

DeterminingSystem determining_system(const BimetricSystem& sys) {
  auto X = opaque_generator(sys.jets());
  return extract_determining(SymmetryCondition(sys).residual(X.generator), sys.jets(), X.functions);
}

// ---------------------------------------------------------------------------
// Conditions of the fully opaque model

std::string to_string(ConditionFamily f) {
  switch (f) {
    case ConditionFamily::Structure:
      return "structure";
    case ConditionFamily::Source:
      return "source";
    case ConditionFamily::Linear:
      return "linear";
    case ConditionFamily::Quadratic:
      return "quadratic";
    case ConditionFamily::Principal:
      return "principal";
    case ConditionFamily::Time:
      return "time";
  }
  return "?";
}

namespace {

std::string indexed(const std::string& base, std::size_t k, std::size_t count) {
  return count == 1 ? base : base + std::to_string(k + 1);
}

Expr apply(const FunctionSymbol& f) {
  return Expr::apply(f, std::vector<Expr>(f.params().begin(), f.params().end()));
}

/// Derivative with respect to an opaque application treated as a variable. The denominator
/// must not involve it.
Expr diff_atom(const Expr& e, const Atom& a) {
  if (e.denominator().contains(a)) throw NotLinear("unknown " + a.to_string() + " occurs in a denominator");
  return Expr::quotient(e.numerator().derivative(a), e.denominator());
}

/// True iff `equations` are linear and homogeneous in `atoms` with a coefficient matrix of
/// full column rank, so that together they force every atom to vanish.
bool forces_zero(const std::vector<Expr>& equations, const std::vector<Atom>& atoms) {
  ExprMatrix jac;
  for (const auto& e : equations) {
    std::vector<Expr> row;
    Expr rest = e;
    for (const auto& a : atoms) {
      Expr c = diff_atom(e, a);
      for (const auto& b : atoms)
        if (!diff_atom(c, b).is_zero()) return false;
      rest -= c * Expr(a);
      row.push_back(c);
    }
    if (!rest.is_zero()) return false;
    jac.push_back(std::move(row));
  }
  return !jac.empty() && rank(jac) == atoms.size();
}

Atom derivative_atom(const Expr& application, std::size_t slot) {
  return application.atoms().front().differentiated(static_cast<int>(slot));
}

}  // namespace

OpaqueModel opaque_model(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw ValidationError("opaque model needs n, m >= 1");
  Symbol t = Symbol::time("t");
  std::vector<Symbol> x, u;
  for (std::size_t i = 0; i < n; ++i) x.push_back(Symbol::independent(indexed("x", i, n), static_cast<int>(i + 1)));
  for (std::size_t a = 0; a < m; ++a) u.push_back(Symbol::dependent(indexed("u", a, m), static_cast<int>(a + 1)));
  std::vector<Symbol> txu{t};
  txu.insert(txu.end(), x.begin(), x.end());
  txu.insert(txu.end(), u.begin(), u.end());

  OpaqueModel M{t, x, u, JetContext(t, x, u), Symbol::parameter("lambda"), {}, {}, {}, {}};
  auto fn = [&](const std::string& name, const std::vector<Symbol>& params) {
    FunctionSymbol f(name, params);
    M.coefficient_functions.push_back(f);
    return apply(f);
  };
  auto& c = M.coefficients;
  c.ginv.assign(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      c.ginv[i][j] = c.ginv[j][i] = fn("ginv_" + std::to_string(i + 1) + std::to_string(j + 1), x);
  for (std::size_t i = 0; i < n; ++i) c.gamma.push_back(fn("Gamma_" + std::to_string(i + 1), x));
  c.gamma_u.assign(m, ExprMatrix(m, std::vector<Expr>(m)));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t d = b; d < m; ++d)
        c.gamma_u[a][b][d] = c.gamma_u[a][d][b] =
            fn("Gt_" + std::to_string(a + 1) + "_" + std::to_string(b + 1) + std::to_string(d + 1), u);
  for (std::size_t a = 0; a < m; ++a) c.F.push_back(fn("F_" + std::to_string(a + 1), txu));

  M.generic = opaque_generator(M.jets);
  std::vector<Symbol> tx{t};
  tx.insert(tx.end(), x.begin(), x.end());
  auto restricted = [&](const std::string& name, const std::vector<Symbol>& params) {
    FunctionSymbol f(name, params);
    M.restricted.functions.push_back(f);
    return apply(f);
  };
  M.restricted.generator.xi_t = restricted("xi_t", {t});
  for (const auto& s : x) M.restricted.generator.xi.push_back(restricted("xi_" + s.name(), tx));
  for (const auto& s : u) M.restricted.generator.eta.push_back(restricted("eta_" + s.name(), txu));
  return M;
}

std::vector<const DeterminingEquation*> MultiplierConditions::family(ConditionFamily f) const {
  std::vector<const DeterminingEquation*> out;
  const std::string name = to_string(f);
  for (const auto& e : system.equations)
    if (e.group == name) out.push_back(&e);
  return out;
}

MultiplierConditions multiplier_conditions(std::size_t n, std::size_t m) {
  MultiplierConditions out{opaque_model(n, m), {}};
  const auto& M = out.model;
  const auto& jets = M.jets;
  const auto Q = build_Q(M.coefficients, jets);
  SymmetryCondition sc(Q, jets);
  const Expr lambda(M.lambda);
  auto multiplier_residual = [&](const Generator& X) {
    auto r = sc.unreduced(X);
    for (std::size_t a = 0; a < m; ++a) r[a] -= lambda * Q[a];
    return r;
  };
  auto& sys = out.system;
  sys.lambda = M.lambda;
  sys.unknowns = M.restricted.functions;

  // Structure family: each group of derivatives is forced to vanish by one jet class of the
  // generic residual.
  {
    const auto& G = M.generic.generator;
    auto R = multiplier_residual(G);
    std::vector<std::map<Monomial, Expr>> coeffs;
    for (const auto& r : R) coeffs.push_back(collect(r, jets.derivative_jets()));
    auto coefficient = [&](std::size_t a, const Monomial& mono) {
      auto it = coeffs[a].find(mono);
      return it == coeffs[a].end() ? Expr() : it->second;
    };
    auto jet = [](const Symbol& s) { return Monomial::of(Atom(s)); };
    auto emit = [&](const std::vector<Atom>& atoms, const std::vector<Expr>& witnesses, const std::string& label) {
      if (!forces_zero(witnesses, atoms))
        throw Error("structure conditions are not forced by the " + label + " coefficients");
      for (const auto& a : atoms) sys.equations.push_back({0, to_string(ConditionFamily::Structure), label, Expr(a)});
    };

    // xi^t_{,i} from the coefficients of u^A_ti.
    std::vector<Atom> atoms;
    std::vector<Expr> witnesses;
    for (std::size_t i = 0; i < n; ++i) atoms.push_back(derivative_atom(G.xi_t, 1 + i));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t i = 0; i < n; ++i) witnesses.push_back(coefficient(a, jet(jets.second(a, 0, i + 1))));
    emit(atoms, witnesses, "u_ti");

    // xi^t_{,B} from the coefficients of u^A_t u^B_t.
    atoms.clear();
    witnesses.clear();
    for (std::size_t b = 0; b < m; ++b) atoms.push_back(derivative_atom(G.xi_t, 1 + n + b));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) witnesses.push_back(coefficient(a, jet(jets.ut(a)) * jet(jets.ut(b))));
    emit(atoms, witnesses, "u_t*u_t");

    // xi^k_{,B} from the coefficients of u^B_ij u^C_k.
    atoms.clear();
    witnesses.clear();
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t b = 0; b < m; ++b) atoms.push_back(derivative_atom(G.xi[k], 1 + n + b));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i; j < n; ++j)
            for (std::size_t c = 0; c < m; ++c)
              for (std::size_t k = 0; k < n; ++k)
                witnesses.push_back(coefficient(a, jet(jets.uxx(b, i, j)) * jet(jets.ux(c, k))));
    emit(atoms, witnesses, "u_ij*u_k");
  }

  // Remaining families from the restricted generator, classified by jet monomial.
  auto R = multiplier_residual(M.restricted.generator);
  std::vector<DeterminingEquation> families[6];
  for (std::size_t a = 0; a < m; ++a)
    for (const auto& [mono, coeff] : collect(R[a], jets.derivative_jets())) {
      if (coeff.is_zero()) continue;
      int first_space = 0, first_time = 0, second_space = 0, other = 0;
      for (const auto& [atom, e] : mono.factors()) {
        const auto& dirs = atom.symbol().directions();
        bool timelike = std::find(dirs.begin(), dirs.end(), 0) != dirs.end();
        if (dirs.size() == 1)
          (timelike ? first_time : first_space) += e;
        else if (!timelike)
          second_space += e;
        else
          other += e;
      }
      ConditionFamily f;
      if (other == 0 && first_time == 0 && second_space == 0 && first_space == 0)
        f = ConditionFamily::Source;
      else if (other == 0 && first_time == 0 && second_space == 0 && first_space == 1)
        f = ConditionFamily::Linear;
      else if (other == 0 && first_time == 0 && second_space == 0 && first_space == 2)
        f = ConditionFamily::Quadratic;
      else if (other == 0 && first_time == 0 && second_space == 1 && first_space == 0)
        f = ConditionFamily::Principal;
      else if (other == 0 && first_time == 1 && second_space == 0 && first_space == 0)
        f = ConditionFamily::Time;
      else
        throw Error("unexpected jet monomial " + mono.to_string() + " in the restricted symmetry condition");
      families[static_cast<int>(f)].push_back({a, to_string(f), mono.is_one() ? "1" : mono.to_string(), coeff});
    }
  for (auto& fam : families)
    for (auto& e : fam) sys.equations.push_back(std::move(e));
  return out;
}

}  // namespace liesym
