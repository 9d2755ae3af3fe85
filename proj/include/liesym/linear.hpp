#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "liesym/expr.hpp"

namespace liesym {

/// Sparse row over the rationals: (column, value) pairs, columns strictly increasing, values nonzero.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Incrementally maintained reduced row echelon form. Pivots are the leftmost nonzero
/// columns, so the column order fixes which unknowns end up free.
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t columns) : columns_(columns) {}

  /// Reduces `row` against the current basis and keeps it if independent. Returns true if kept.
  bool add_row(const SparseRow& row);
  /// Reduced form of `row` modulo the current row space (empty iff it lies in the span).
  SparseRow reduce(const SparseRow& row) const;

  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return pivots_.size(); }
  const std::map<std::size_t, SparseRow>& pivot_rows() const { return pivots_; }
  /// Basis of {v : row . v = 0 for every row}, one vector per free column in increasing order,
  /// with a 1 at that free column and 0 at the other free columns.
  std::vector<std::vector<Rational>> nullspace() const;

 private:
  std::size_t columns_;
  std::map<std::size_t, SparseRow> pivots_;  // pivot column -> row with leading entry 1
};

SparseRow to_sparse(const std::vector<Rational>& dense);

/// Reduced row echelon basis of the span of `vectors` (dense, equal length), zero rows dropped.
std::vector<std::vector<Rational>> row_echelon_basis(const std::vector<std::vector<Rational>>& vectors);

/// Exact nullspace of a homogeneous system linear in `unknowns`. Each equation is split by
/// monomials in every other variable; pivot order is the declaration order of `unknowns`.
/// Throws NotLinear when an equation is nonlinear or inhomogeneous in the unknowns.
std::vector<std::map<Symbol, Rational>> solve_linear(const std::vector<Expr>& equations,
                                                     const std::vector<Symbol>& unknowns);

/// Square matrix with entries in the rational function field.
using ExprMatrix = std::vector<std::vector<Expr>>;

/// Gauss-Jordan inverse over the rational function field; throws SingularMetric if singular.
ExprMatrix inverse(const ExprMatrix& m);
Expr determinant(const ExprMatrix& m);
/// Rank of a (possibly rectangular) matrix over the rational function field.
std::size_t rank(ExprMatrix m);

}  // namespace liesym
