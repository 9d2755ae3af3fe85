#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/kernels.hpp"
#include "liesym/linear.hpp"

namespace liesym {

struct Chart {
  std::vector<Symbol> coords;

  Chart() = default;
  explicit Chart(std::vector<Symbol> c);
  std::size_t dimension() const { return coords.size(); }
  friend bool operator==(const Chart& a, const Chart& b) { return a.coords == b.coords; }
};

/// Symmetric, nondegenerate metric whose components depend only on the chart coordinates.
struct Metric {
  Chart chart;
  ExprMatrix components;

  Metric() = default;
  /// Validates symmetry, coordinate dependence and nondegeneracy.
  Metric(Chart c, ExprMatrix g);
  const Expr& operator()(std::size_t i, std::size_t j) const { return components[i][j]; }
};

/// Affine connection Gamma^i_jk stored as components[i][j][k], symmetric in j, k.
struct Connection {
  Chart chart;
  std::vector<ExprMatrix> components;

  Connection() = default;
  Connection(Chart c, std::vector<ExprMatrix> gamma);
  const Expr& operator()(std::size_t i, std::size_t j, std::size_t k) const { return components[i][j][k]; }
  bool is_zero() const;
};

struct VectorFieldGeo {
  Chart chart;
  std::vector<Expr> components;

  bool is_zero() const;
  std::string to_string() const;  // e.g. "x*d/dy - y*d/dx"
};

enum class CollineationKind { KV, HV, CKV, AC };
std::string to_string(CollineationKind k);
CollineationKind parse_collineation_kind(const std::string& s);

struct CollineationElement {
  VectorFieldGeo field;
  /// psi for HV (constant) and CKV (function); absent for KV and AC.
  std::optional<Expr> factor;
  /// Potential zeta_bar with d(zeta_bar) = g(field, .), when the lowered field is exact.
  std::optional<Expr> potential;
};

struct CollineationBasis {
  CollineationKind kind;
  /// KV/CKV/AC: the whole algebra. HV: the proper homothetic field(s), normalized to psi = 1.
  std::vector<CollineationElement> basis;
  /// HV only: the Killing vectors, reported separately.
  std::vector<CollineationElement> killing;
};

ExprMatrix inverse_metric(const Metric& g);
Connection christoffel(const Metric& g);
/// Gamma^i = g^jk Gamma^i_jk.
std::vector<Expr> contracted_connection(const Metric& g);
/// (L_xi g)_ij = xi^k g_ij,k + g_kj xi^k_,i + g_ik xi^k_,j.
ExprMatrix lie_metric(const VectorFieldGeo& xi, const Metric& g);
/// Lie derivative of a symmetric connection along eta, as components[A][B][C].
std::vector<ExprMatrix> lie_connection(const VectorFieldGeo& eta, const Connection& G);
/// Covariant derivative of the metric, components[i][j][k] = g_ij;k.
std::vector<ExprMatrix> metric_covariant_derivative(const Metric& g, const Connection& G);

/// Ansatz-based solver: each component is a polynomial of total degree <= degree.
/// Results are complete only within that degree.
CollineationBasis solve_collineations(const Metric& g, CollineationKind kind, int degree,
                                      const AssemblyOptions& options = {});
/// AC of an explicitly given connection.
CollineationBasis solve_collineations(const Connection& G, int degree, const AssemblyOptions& options = {});

/// Potential of the lowered field g(zeta, .). Throws NotClosed or NotIntegrable.
Expr gradient_decompose(const VectorFieldGeo& zeta, const Metric& g);

/// Basis of the fields in span(fields) whose lowered form is closed, each with its potential.
std::vector<CollineationElement> gradient_subspace(const std::vector<VectorFieldGeo>& fields, const Metric& g,
                                                   const AssemblyOptions& options = {});

/// Riemann tensor R^i_jkl = d_k Gamma^i_lj - d_l Gamma^i_kj + Gamma^i_km Gamma^m_lj - Gamma^i_lm Gamma^m_kj.
std::vector<std::vector<ExprMatrix>> riemann(const Metric& g);

struct MaximalSymmetry {
  bool is_maximal = false;
  std::optional<Expr> curvature_constant;
};
/// Checks R_ijkl = K (g_ik g_jl - g_il g_jk) with K constant. Requires dimension >= 2.
MaximalSymmetry maximal_symmetry_test(const Metric& g);

/// Monomials of total degree <= degree in `vars`, ascending degree then lexicographic.
std::vector<Expr> monomial_basis(const std::vector<Symbol>& vars, int degree);

}  // namespace liesym
