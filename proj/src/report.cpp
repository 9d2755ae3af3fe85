#include "liesym/report.hpp"

#include <sstream>

#include "liesym/errors.hpp"

namespace liesym {

using nlohmann::json;

namespace {

std::vector<Symbol> coordinates(const JetContext& jets) {
  std::vector<Symbol> c{jets.time()};
  c.insert(c.end(), jets.space().begin(), jets.space().end());
  c.insert(c.end(), jets.dependent().begin(), jets.dependent().end());
  return c;
}

json matrix_json(const ExprMatrix& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& e : row) r.push_back(e.to_string());
    out.push_back(r);
  }
  return out;
}

std::string matrix_text(const ExprMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? ", " : "") + m[i][j].to_string();
    s += "]";
  }
  return s + "]";
}

json problem_json(const Problem& p) {
  const auto& sys = p.system;
  json j;
  j["time"] = sys.t.name();
  for (const auto& s : sys.x.coords) j["indep"].push_back(s.name());
  for (const auto& s : sys.u.coords) j["dep"].push_back(s.name());
  j["g"] = matrix_json(sys.g.components);
  if (const auto* h = std::get_if<Metric>(&sys.H)) {
    j["H"] = {{"metric", matrix_json(h->components)}};
  } else {
    json c = json::array();
    for (const auto& m : std::get<Connection>(sys.H).components) c.push_back(matrix_json(m));
    j["H"] = {{"connection", c}};
  }
  for (const auto& f : sys.F) j["F"].push_back(f.to_string());
  return j;
}

json generator_json(const Generator& X, const JetContext& jets) {
  json j;
  j["generator"] = to_string(X, jets);
  auto coords = coordinates(jets);
  auto comps = X.components();
  for (std::size_t k = 0; k < coords.size(); ++k) j["components"][coords[k].name()] = comps[k].to_string();
  return j;
}

json residual_json(const std::vector<Expr>& r) {
  json out = json::array();
  for (const auto& e : r) out.push_back(e.to_string());
  return out;
}

bool all_zero(const std::vector<Expr>& r) {
  return std::all_of(r.begin(), r.end(), [](const Expr& e) { return e.is_zero(); });
}

void residual_text(std::ostringstream& out, const std::vector<Expr>& r, const JetContext& jets, const std::string& indent) {
  if (all_zero(r)) {
    out << indent << "residual: 0\n";
    return;
  }
  for (std::size_t a = 0; a < r.size(); ++a)
    out << indent << "residual " << jets.dependent()[a].name() << ": " << r[a].to_string() << "\n";
}

json provenance_json(const Provenance& p) {
  json j;
  j["alpha0"] = p.alpha0.to_string();
  j["spatial"] = json::array();
  for (const auto& s : p.spatial) {
    json e{{"T", s.T.to_string()}, {"psi", s.psi.to_string()}, {"zeta", s.zeta.field.to_string()}};
    if (s.zeta.potential) e["potential"] = s.zeta.potential->to_string();
    j["spatial"].push_back(e);
  }
  j["affine"] = json::array();
  for (const auto& a : p.affine) j["affine"].push_back({{"coefficient", a.coefficient.to_string()}, {"Z", a.Z.to_string()}});
  j["gradient"] = json::array();
  for (const auto& g : p.gradient)
    j["gradient"].push_back(
        {{"coefficient", g.coefficient.to_string()}, {"potential", g.potential.to_string()}, {"Y", g.Y.to_string()}});
  j["sigma"] = residual_json(p.sigma);
  j["lambda"] = matrix_json(p.lambda);
  return j;
}

void provenance_text(std::ostringstream& out, const Provenance& p, const JetContext& jets) {
  const std::string in = "      ";
  if (!p.alpha0.is_zero()) out << in << "alpha0 = " << p.alpha0.to_string() << "\n";
  for (const auto& s : p.spatial) {
    out << in << "T = " << s.T.to_string() << ", psi = " << s.psi.to_string() << ", zeta = " << s.zeta.field.to_string();
    if (s.zeta.potential) out << ", zeta_bar = " << s.zeta.potential->to_string();
    out << "\n";
  }
  for (const auto& a : p.affine) out << in << "Z: " << a.coefficient.to_string() << " * (" << a.Z.to_string() << ")\n";
  for (const auto& g : p.gradient)
    out << in << "-c zeta_bar Y: c = " << g.coefficient.to_string() << ", zeta_bar = " << g.potential.to_string()
        << ", Y = " << g.Y.to_string() << "\n";
  for (std::size_t a = 0; a < p.sigma.size(); ++a)
    if (!p.sigma[a].is_zero()) out << in << "sigma " << jets.dependent()[a].name() << " = " << p.sigma[a].to_string() << "\n";
  out << in << "lambda = " << matrix_text(p.lambda) << "\n";
}

// Nonzero brackets [X_i, X_j] = sum_k c^k_ij X_k over labels X1..Xd.
void commutator_report(const std::vector<std::vector<std::vector<Rational>>>& c, std::ostringstream& out, json& j) {
  j["commutators"] = json::array();
  const std::size_t d = c.size();
  out << "commutators (modulo the trivial family):\n";
  bool any = false;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = i + 1; k < d; ++k) {
      std::vector<std::pair<Expr, std::string>> terms;
      json coeffs = json::object();
      for (std::size_t l = 0; l < d; ++l)
        if (c[i][k][l] != 0) {
          terms.emplace_back(Expr(c[i][k][l]), "X" + std::to_string(l + 1));
          coeffs["X" + std::to_string(l + 1)] = rational_to_string(c[i][k][l]);
        }
      if (terms.empty()) continue;
      any = true;
      std::string lhs = "[X" + std::to_string(i + 1) + ", X" + std::to_string(k + 1) + "]";
      std::string rhs = format_combination(terms);
      out << "  " << lhs << " = " << rhs << "\n";
      j["commutators"].push_back({{"bracket", lhs}, {"result", rhs}, {"coefficients", coeffs}});
    }
  if (!any) out << "  all brackets vanish\n";
}

void header(std::ostringstream& out, json& j, const std::string& command, const Problem& p) {
  j["schema"] = 1;
  j["command"] = command;
  j["problem"] = problem_json(p);
  out << "problem:\n";
  std::istringstream echo(echo_problem(p));
  for (std::string line; std::getline(echo, line);) out << "  " << line << "\n";
  out << "\n";
}

void algebra_report(const LieAlgebra& A, const std::vector<const Provenance*>& provenance, const BimetricSystem& sys,
                    std::ostringstream& out, json& j) {
  const auto& jets = sys.jets();
  SymmetryCondition cond(sys);
  out << "finite generators: " << A.finite_dimension << "\n";
  j["finite_dimension"] = A.finite_dimension;
  j["generators"] = json::array();
  j["trivial"] = json::array();
  for (std::size_t k = 0; k < A.basis.size(); ++k) {
    const bool finite = k < A.finite_dimension;
    if (k == A.finite_dimension) out << "trivial generators (xi = 0, eta free of u): " << A.basis.size() - k << "\n";
    std::string label = finite ? "X" + std::to_string(k + 1) : "S" + std::to_string(k - A.finite_dimension + 1);
    auto r = cond.residual(A.basis[k]);
    out << "  " << label << " = " << to_string(A.basis[k], jets) << "\n";
    json g = generator_json(A.basis[k], jets);
    g["label"] = label;
    g["residuals"] = residual_json(r);
    if (finite) {
      if (!provenance.empty()) {
        out << "    provenance:\n";
        provenance_text(out, *provenance[k], jets);
        g["provenance"] = provenance_json(*provenance[k]);
      }
      residual_text(out, r, jets, "    ");
    }
    (finite ? j["generators"] : j["trivial"]).push_back(g);
  }
  if (A.finite_dimension == A.basis.size()) out << "trivial generators (xi = 0, eta free of u): 0\n";
  out << "infinite trivial family: " << (A.trivial_family_flag ? "yes" : "no") << "\n";
  j["trivial_family"] = A.trivial_family_flag;
  commutator_report(A.structure_constants, out, j);
}

Report finish(std::ostringstream& out, json j) { return {out.str(), std::move(j)}; }

}  // namespace

SymmetryOptions resolve_options(const Problem& p, std::optional<int> degree, std::optional<int> t_degree,
                                std::size_t max_monomials) {
  SymmetryOptions o;
  o.degree = degree.value_or(p.degree.value_or(2));
  o.t_degree = t_degree.value_or(p.t_degree.value_or(2));
  if (o.degree < 0 || o.t_degree < 0) throw ValidationError("degrees must be nonnegative");
  o.assembly.max_monomials = max_monomials;
  return o;
}

Report report_symmetries(const Problem& p, const SymmetryOptions& options) {
  std::ostringstream out;
  json j;
  header(out, j, "symmetries", p);
  const auto& sys = p.system;
  auto cands = assemble_from_collineations(sys, options);
  LieAlgebra A = algebra_of(cands, sys, options.degree, options.assembly);
  if (A.basis.size() != cands.size()) throw Error("candidate basis is not canonical");
  std::vector<const Provenance*> prov;
  for (std::size_t k = 0; k < cands.size(); ++k) {
    if (!(A.basis[k] == cands[k].generator)) throw Error("candidate basis is not canonical");
    prov.push_back(&cands[k].provenance);
  }
  j["degree"] = options.degree;
  j["t_degree"] = options.t_degree;
  algebra_report(A, prov, sys, out, j);
  std::vector<std::string> notes{"complete within polynomial degree " + std::to_string(options.degree) +
                                     " for collineations and sigma, and degree " + std::to_string(options.t_degree) +
                                     " in t for T and the dependent-field coefficients",
                                 "lambda is the multiplier matrix in X^[2] Q^A = lambda^A_B Q^B"};
  out << "notes:\n";
  for (const auto& n : notes) out << "  - " << n << "\n";
  j["notes"] = notes;
  return finish(out, j);
}

Report report_collineations(const Problem& p, const std::string& which, CollineationKind kind,
                            const SymmetryOptions& options) {
  std::ostringstream out;
  json j;
  header(out, j, "collineations", p);
  const auto& sys = p.system;
  CollineationBasis B;
  if (which == "g") {
    B = solve_collineations(sys.g, kind, options.degree, options.assembly);
  } else if (which == "H") {
    if (const auto& h = sys.dependent_metric()) {
      B = solve_collineations(*h, kind, options.degree, options.assembly);
    } else if (kind == CollineationKind::AC) {
      B = solve_collineations(sys.dependent_connection(), options.degree, options.assembly);
    } else {
      throw ValidationError("H is given as a connection; only AC can be computed");
    }
  } else {
    throw ValidationError("collineations target must be 'g' or 'H', got '" + which + "'");
  }
  j["target"] = which;
  j["kind"] = to_string(kind);
  j["degree"] = options.degree;
  auto list = [&](const std::vector<CollineationElement>& es, const std::string& title, const std::string& key) {
    out << title << ": " << es.size() << "\n";
    j[key] = json::array();
    for (std::size_t k = 0; k < es.size(); ++k) {
      const auto& e = es[k];
      out << "  " << k + 1 << ". " << e.field.to_string();
      json f{{"field", e.field.to_string()}};
      if (e.factor) {
        out << "   psi = " << e.factor->to_string();
        f["psi"] = e.factor->to_string();
      }
      if (e.potential) {
        out << "   potential = " << e.potential->to_string();
        f["potential"] = e.potential->to_string();
      }
      out << "\n";
      j[key].push_back(f);
    }
  };
  if (kind == CollineationKind::HV) {
    list(B.killing, "killing vectors", "killing");
    list(B.basis, "homothetic vectors", "basis");
  } else {
    list(B.basis, to_string(kind) + " basis", "basis");
  }
  return finish(out, j);
}

Report report_determining(const Problem& p) {
  std::ostringstream out;
  json j;
  header(out, j, "determining", p);
  const auto& sys = p.system;
  const auto& jets = sys.jets();
  auto X = opaque_generator(jets);
  std::string unknowns;
  for (const auto& f : X.functions) {
    std::string args;
    for (const auto& s : f.params()) args += (args.empty() ? "" : ",") + s.name();
    unknowns += (unknowns.empty() ? "" : ", ") + f.name() + "(" + args + ")";
    j["unknowns"].push_back(f.name() + "(" + args + ")");
  }
  out << "unknowns: " << unknowns << "\n";

  auto section = [&](const DeterminingSystem& D, const std::string& title, const std::string& key) {
    out << "\n" << title << ": " << D.equations.size() << " equations\n";
    json groups = json::object();
    for (const auto& [group, idx] : D.grouping()) {
      out << "  [" << group << "]\n";
      for (std::size_t k : idx) {
        const auto& e = D.equations[k];
        out << "    " << e.lhs.to_string() << " = 0\n";
        groups[group].push_back({{"component", jets.dependent()[e.component].name()},
                                 {"monomial", e.monomial},
                                 {"lhs", e.lhs.to_string()}});
      }
    }
    j[key] = groups;
  };
  section(determining_system(sys), "reduced form (u_t eliminated on solutions)", "reduced");

  auto mf = multiplier_form(X.generator, sys);
  out << "\nmultiplier lambda^A_B = -d(X^[2] Q^A)/du^B_t:\n";
  for (std::size_t a = 0; a < sys.m(); ++a)
    for (std::size_t b = 0; b < sys.m(); ++b)
      out << "  " << jets.dependent()[a].name() << "," << jets.dependent()[b].name() << ": "
          << mf.lambda[a][b].to_string() << "\n";
  j["lambda"] = matrix_json(mf.lambda);
  section(extract_determining(mf.residuals, jets, X.functions), "multiplier form (X^[2] Q^A - lambda^A_B Q^B)",
          "multiplier");
  return finish(out, j);
}

Report report_verify(const Problem& p, const std::string& generator) {
  std::ostringstream out;
  json j;
  header(out, j, "verify", p);
  const auto& jets = p.system.jets();
  Generator X = parse_generator(generator, p);
  validate_generator(X, jets);
  auto v = verify_symmetry(X, p.system);
  out << "generator: " << to_string(X, jets) << "\n";
  if (v.is_symmetry) {
    out << "SYMMETRY: yes, residual 0\n";
  } else {
    out << "SYMMETRY: no\n";
    residual_text(out, v.residuals, jets, "  ");
  }
  j["generator"] = generator_json(X, jets);
  j["symmetry"] = v.is_symmetry;
  j["residuals"] = residual_json(v.residuals);
  return finish(out, j);
}

Report report_brute(const Problem& p, int degree, const SymmetryOptions& options) {
  std::ostringstream out;
  json j;
  header(out, j, "brute", p);
  j["degree"] = degree;
  out << "polynomial ansatz of total degree <= " << degree << " in every component\n";
  auto A = brute_force_symmetries(p.system, degree, options.assembly);
  algebra_report(A, {}, p.system, out, j);
  return finish(out, j);
}

Report report_compare(const Problem& p, const SymmetryOptions& options) {
  std::ostringstream out;
  json j;
  header(out, j, "compare", p);
  const auto& sys = p.system;
  auto A = algebra_of(assemble_from_collineations(sys, options), sys, options.degree, options.assembly);
  auto B = brute_force_symmetries(sys, options.degree, options.assembly);
  bool same = compare_algebras(A, B, sys.jets());
  out << "collineation assembly: " << A.finite_dimension << " finite, " << A.basis.size() - A.finite_dimension
      << " trivial\n";
  out << "polynomial ansatz (degree " << options.degree << "): " << B.finite_dimension << " finite, "
      << B.basis.size() - B.finite_dimension << " trivial\n";
  out << "EQUIVALENT: " << (same ? "yes" : "no") << "\n";
  j["degree"] = options.degree;
  j["t_degree"] = options.t_degree;
  j["assembled"] = {{"finite", A.finite_dimension}, {"trivial", A.basis.size() - A.finite_dimension}};
  j["brute"] = {{"finite", B.finite_dimension}, {"trivial", B.basis.size() - B.finite_dimension}};
  j["equivalent"] = same;
  return finish(out, j);
}

}  // namespace liesym
