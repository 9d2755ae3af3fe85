#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/geometry.hpp"

namespace liesym {

/// Jet coordinates u^A, u^A_t, u^A_i, u^A_ij (i <= j), u^A_ti and u^A_tt.
/// Direction 0 is time and direction i >= 1 is x^i.
class JetContext {
 public:
  JetContext(Symbol t, std::vector<Symbol> x, std::vector<Symbol> u);

  const Symbol& time() const { return t_; }
  const std::vector<Symbol>& space() const { return x_; }
  const std::vector<Symbol>& dependent() const { return u_; }
  std::size_t n() const { return x_.size(); }
  std::size_t m() const { return u_.size(); }
  /// Independent variable alpha: 0 = t, i >= 1 = x^i.
  const Symbol& independent(std::size_t alpha) const { return alpha == 0 ? t_ : x_[alpha - 1]; }

  /// u^A_alpha.
  const Symbol& first(std::size_t a, std::size_t alpha) const;
  /// u^A_alpha beta (either order).
  const Symbol& second(std::size_t a, std::size_t alpha, std::size_t beta) const;
  const Symbol& ut(std::size_t a) const { return first(a, 0); }
  const Symbol& ux(std::size_t a, std::size_t i) const { return first(a, i + 1); }
  const Symbol& uxx(std::size_t a, std::size_t i, std::size_t j) const { return second(a, i + 1, j + 1); }

  /// Derivative jets (excluding u^A), A-major then graded direction order.
  const std::vector<Symbol>& derivative_jets() const { return jets_; }
  /// u^A followed by the derivative jets.
  std::vector<Symbol> all() const;

 private:
  Symbol t_;
  std::vector<Symbol> x_;
  std::vector<Symbol> u_;
  std::vector<std::vector<Symbol>> first_;                // [A][alpha]
  std::vector<std::vector<std::vector<Symbol>>> second_;  // [A][alpha][beta], symmetric
  std::vector<Symbol> jets_;
};

/// Coefficients of the quasilinear evolution system, either computed from concrete geometry
/// or kept as opaque functions.
struct EvolutionCoefficients {
  ExprMatrix ginv;                  // g^ij
  std::vector<Expr> gamma;          // Gamma^i = g^jk Gamma^i_jk
  std::vector<ExprMatrix> gamma_u;  // Gamma~^A_BC as [A][B][C]
  std::vector<Expr> F;              // F^A(t, x, u)
};

/// Source of the dependent-space geometry: a metric H_AB or a connection Gamma~^A_BC.
using DependentGeometry = std::variant<Metric, Connection>;

struct BimetricSystem {
  Symbol t;
  Chart x;
  Chart u;
  Metric g;
  DependentGeometry H;
  std::vector<Expr> F;

  /// Validates minimal coupling, dimensions and that F carries no jets or foreign symbols.
  BimetricSystem(Symbol time, Chart space, Chart dependent, Metric metric, DependentGeometry h, std::vector<Expr> f);

  std::size_t n() const { return x.dimension(); }
  std::size_t m() const { return u.dimension(); }
  /// Gamma~ (Levi-Civita connection of H when H is a metric).
  const Connection& dependent_connection() const { return gamma_u_; }
  const std::optional<Metric>& dependent_metric() const { return h_metric_; }
  const EvolutionCoefficients& coefficients() const { return coeffs_; }
  const JetContext& jets() const { return jets_; }
  bool is_free() const;

 private:
  Connection gamma_u_;
  std::optional<Metric> h_metric_;
  EvolutionCoefficients coeffs_;
  JetContext jets_;
};

/// Q^A = g^ij u^A_ij + g^ij Gamma~^A_BC u^B_i u^C_j - Gamma^i u^A_i + F^A - u^A_t.
std::vector<Expr> build_Q(const EvolutionCoefficients& c, const JetContext& jets);
std::vector<Expr> build_Q(const BimetricSystem& sys);

/// The on-solution map u^A_t -> Q^A + u^A_t. Throws MalformedSystem unless each Q^A is affine
/// in u^A_t with coefficient -1 and free of the other u^B_t.
Substitution solve_for_ut(const std::vector<Expr>& Q, const JetContext& jets);

}  // namespace liesym
