#pragma once

#include <map>
#include <string>
#include <vector>

#include "liesym/evolution.hpp"

namespace liesym {

/// Point generator X = xi^t d/dt + xi^i d/dx^i + eta^A d/du^A.
struct Generator {
  Expr xi_t;
  std::vector<Expr> xi;
  std::vector<Expr> eta;

  /// Components in the order (t, x^1..x^n, u^1..u^m).
  std::vector<Expr> components() const;
  static Generator from_components(const std::vector<Expr>& c, std::size_t n, std::size_t m);
  bool is_zero() const;

  friend Generator operator+(const Generator& a, const Generator& b);
  friend Generator operator*(const Expr& c, const Generator& a);
  friend bool operator==(const Generator& a, const Generator& b) { return a.components() == b.components(); }
};

/// "c*d/dt + c*d/dx + ... + c*d/du"; zero components are omitted.
std::string to_string(const Generator& X, const JetContext& jets);

/// Throws JetInGenerator if a jet occurs, ChartMismatch if a foreign coordinate occurs.
void validate_generator(const Generator& X, const JetContext& jets);

struct ProlongedGenerator {
  Generator base;
  std::vector<std::vector<Expr>> eta1;               // [A][alpha]
  std::vector<std::vector<std::vector<Expr>>> eta2;  // [A][alpha][beta], symmetric
};

/// Second extension. Symmetrized index pairs carry weight 1/2.
ProlongedGenerator prolong(const Generator& X, const JetContext& jets);

/// X^[2] applied to a fixed list of functions on jet space, with the on-solution map for u_t.
class SymmetryCondition {
 public:
  SymmetryCondition(std::vector<Expr> Q, JetContext jets);
  explicit SymmetryCondition(const BimetricSystem& sys);

  const std::vector<Expr>& Q() const { return Q_; }
  const JetContext& jets() const { return jets_; }
  /// X^[2] Q^A with no reduction.
  std::vector<Expr> unreduced(const Generator& X) const;
  /// X^[2] Q^A with u^A_t replaced by its on-solution value.
  std::vector<Expr> residual(const Generator& X) const;

 private:
  std::vector<Expr> Q_;
  JetContext jets_;
  Substitution on_solution_;
  // Nonzero partial derivatives of each Q^A: coordinates by their position in
  // Generator::components(), jets by symbol.
  std::vector<std::vector<std::pair<std::size_t, Expr>>> coordinate_partials_;
  std::vector<std::vector<std::pair<Symbol, Expr>>> jet_partials_;
};

/// On-solution residual of X^[2] Q for the system; zero iff X is a symmetry.
std::vector<Expr> apply_symmetry_condition(const ProlongedGenerator& PX, const BimetricSystem& sys);

struct VerificationResult {
  bool is_symmetry = false;
  std::vector<Expr> residuals;
};
VerificationResult verify_symmetry(const Generator& X, const BimetricSystem& sys);

/// Multiplier form X^[2] Q^A = lambda^A_B Q^B with lambda^A_B read off the u^B_t coefficients.
struct MultiplierForm {
  ExprMatrix lambda;
  std::vector<Expr> residuals;  // X^[2] Q^A - lambda^A_B Q^B, unreduced
};
MultiplierForm multiplier_form(const Generator& X, const BimetricSystem& sys);

struct DeterminingEquation {
  std::size_t component = 0;  // index A of the residual it came from
  std::string group;          // jet class such as "u_a*u_b", or a condition family name
  std::string monomial;       // jet monomial whose coefficient this is, "1" for the jet-free part
  Expr lhs;                   // required to vanish identically
};

struct DeterminingSystem {
  std::vector<FunctionSymbol> unknowns;
  std::optional<Symbol> lambda;
  std::vector<DeterminingEquation> equations;

  std::map<std::string, std::vector<std::size_t>> grouping() const;
  std::vector<Expr> lhs() const;
};

/// Jet class of a monomial in derivative jets, e.g. "1", "u_a", "u_a*u_b", "u_ab", "u_ab*u_c".
std::string jet_class(const Monomial& m);

/// Collects residuals over all derivative jets; one equation per nonzero coefficient.
DeterminingSystem extract_determining(const std::vector<Expr>& residuals, const JetContext& jets,
                                      const std::vector<FunctionSymbol>& unknowns);

/// Generator whose components are opaque functions xi_t(t,x,u), xi_<x^i>(t,x,u), eta_<u^A>(t,x,u).
struct OpaqueGenerator {
  Generator generator;
  std::vector<FunctionSymbol> functions;
};
OpaqueGenerator opaque_generator(const JetContext& jets);

/// Determining system of a concrete system for a fully opaque generator.
DeterminingSystem determining_system(const BimetricSystem& sys);

enum class ConditionFamily { Structure, Source, Linear, Quadratic, Principal, Time };
std::string to_string(ConditionFamily f);

/// Evolution system with every coefficient an opaque function: g^ij(x), Gamma^i(x),
/// Gamma~^A_BC(u), F^A(t,x,u), and the multiplier lambda.
struct OpaqueModel {
  Symbol t;
  std::vector<Symbol> x;
  std::vector<Symbol> u;
  JetContext jets;
  Symbol lambda;
  EvolutionCoefficients coefficients;
  std::vector<FunctionSymbol> coefficient_functions;
  /// xi^t(t,x,u), xi^i(t,x,u), eta^A(t,x,u).
  OpaqueGenerator generic;
  /// xi^t(t), xi^i(t,x), eta^A(t,x,u): the form left once the structure family holds.
  OpaqueGenerator restricted;
};
OpaqueModel opaque_model(std::size_t n, std::size_t m);

struct MultiplierConditions {
  OpaqueModel model;
  /// Equations grouped by family name (to_string(ConditionFamily)), lambda kept explicit.
  DeterminingSystem system;
  std::vector<const DeterminingEquation*> family(ConditionFamily f) const;
};

/// Symmetry conditions of the opaque model in multiplier form X^[2] Q^A - lambda Q^A.
/// The structure family is confirmed by rank tests on the generic generator; the other
/// families are the jet-class coefficients for the restricted generator.
MultiplierConditions multiplier_conditions(std::size_t n, std::size_t m);

}  // namespace liesym
