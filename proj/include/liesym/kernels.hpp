#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/linear.hpp"

namespace liesym {

/// Serial is the reference path; Parallel distributes independent columns over OpenMP threads.
/// Both produce identical results.
enum class Execution { Serial, Parallel };

struct AssemblyOptions {
  Execution execution = Execution::Parallel;
  /// Abort with ResourceLimit once more than this many distinct rows are collected; 0 disables.
  std::size_t max_monomials = 0;
};

/// A residual that is linear in a set of unknown coefficients, evaluated one column at a time:
/// column k holds the residual components produced by setting unknown k to 1 and the rest to 0.
using ColumnFunction = std::function<std::vector<Expr>(std::size_t)>;

/// Evaluates `f` on 0..count-1; results in index order regardless of scheduling.
std::vector<std::vector<Expr>> evaluate_columns(std::size_t count, const ColumnFunction& f, Execution execution);

/// Splits sum_k entries[k] c_k = 0 into rational rows, one per monomial of the other variables
/// after clearing denominators. Rows come out in descending monomial order.
std::vector<SparseRow> split_by_monomials(const std::vector<Expr>& entries);

/// Row form of the system "every component of sum_k c_k columns[k] vanishes identically".
std::vector<SparseRow> assemble_rows(const std::vector<std::vector<Expr>>& columns, const AssemblyOptions& options);

/// Nullspace of the assembled system, pivot order = column order.
std::vector<std::vector<Rational>> column_nullspace(const std::vector<std::vector<Expr>>& columns,
                                                    const AssemblyOptions& options);

}  // namespace liesym
