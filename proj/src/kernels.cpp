#include "liesym/kernels.hpp"

#include <exception>
#include <map>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

// Runs body(i) for i in [0, n); the first exception (by index) is rethrown after the loop.
template <typename Body>
void for_each_index(std::size_t n, Execution execution, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
  const bool parallel = execution == Execution::Parallel;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::vector<std::vector<Expr>> evaluate_columns(std::size_t count, const ColumnFunction& f, Execution execution) {
  std::vector<std::vector<Expr>> out(count);
  for_each_index(count, execution, [&](std::size_t k) { out[k] = f(k); });
  return out;
}

std::vector<SparseRow> split_by_monomials(const std::vector<Expr>& entries) {
  Poly lcm(Rational(1));
  for (const auto& e : entries) {
    if (e.is_zero() || e.denominator() == lcm) continue;
    Poly g = gcd(lcm, e.denominator());
    lcm = *lcm.divide_exact(g) * e.denominator();
  }
  std::map<Monomial, SparseRow> rows;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Expr& e = entries[k];
    if (e.is_zero()) continue;
    Poly scaled = e.numerator() * *lcm.divide_exact(e.denominator());
    for (const auto& t : scaled.terms()) rows[t.mono].emplace_back(k, t.coeff);
  }
  std::vector<SparseRow> out;
  out.reserve(rows.size());
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) out.push_back(std::move(it->second));
  return out;
}

std::vector<SparseRow> assemble_rows(const std::vector<std::vector<Expr>>& columns, const AssemblyOptions& options) {
  std::size_t components = 0;
  for (const auto& c : columns) components = std::max(components, c.size());
  std::vector<std::vector<SparseRow>> per_component(components);
  for_each_index(components, options.execution, [&](std::size_t a) {
    std::vector<Expr> entries(columns.size());
    for (std::size_t k = 0; k < columns.size(); ++k)
      if (a < columns[k].size()) entries[k] = columns[k][a];
    per_component[a] = split_by_monomials(entries);
  });
  std::vector<SparseRow> rows;
  for (auto& block : per_component) {
    for (auto& r : block) rows.push_back(std::move(r));
    if (options.max_monomials && rows.size() > options.max_monomials)
      throw ResourceLimit(rows.size(), options.max_monomials);
  }
  return rows;
}

std::vector<std::vector<Rational>> column_nullspace(const std::vector<std::vector<Expr>>& columns,
                                                    const AssemblyOptions& options) {
  SparseEchelon ech(columns.size());
  for (const auto& row : assemble_rows(columns, options)) ech.add_row(row);
  return ech.nullspace();
}

}  // namespace liesym
