#include "liesym/linear.hpp"

#include "liesym/errors.hpp"
#include "liesym/kernels.hpp"

namespace liesym {

namespace {

// a - f * b, both sorted by column.
SparseRow axpy(const SparseRow& a, const Rational& f, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -f * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second - f * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

const Rational* entry(const SparseRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

}  // namespace

SparseRow SparseEchelon::reduce(const SparseRow& row) const {
  SparseRow w = row;
  std::size_t k = 0;
  while (k < w.size()) {
    auto pit = pivots_.find(w[k].first);
    if (pit == pivots_.end()) {
      ++k;
      continue;
    }
    Rational f = w[k].second;
    w = axpy(w, f, pit->second);
    // Entries before position k are untouched, and the pivot column itself vanished.
  }
  return w;
}

bool SparseEchelon::add_row(const SparseRow& row) {
  SparseRow r = reduce(row);
  if (r.empty()) return false;
  Rational lead = r.front().second;
  if (lead != 1)
    for (auto& e : r) e.second /= lead;
  const std::size_t p = r.front().first;
  for (auto& [col, prow] : pivots_) {
    if (const Rational* v = entry(prow, p)) {
      Rational f = *v;
      prow = axpy(prow, f, r);
    }
  }
  pivots_.emplace(p, std::move(r));
  return true;
}

std::vector<std::vector<Rational>> SparseEchelon::nullspace() const {
  std::vector<std::vector<Rational>> out;
  for (std::size_t f = 0; f < columns_; ++f) {
    if (pivots_.count(f)) continue;
    std::vector<Rational> v(columns_);
    v[f] = 1;
    for (const auto& [pc, prow] : pivots_)
      if (const Rational* e = entry(prow, f)) v[pc] = -*e;
    out.push_back(std::move(v));
  }
  return out;
}

SparseRow to_sparse(const std::vector<Rational>& dense) {
  SparseRow out;
  for (std::size_t k = 0; k < dense.size(); ++k)
    if (dense[k] != 0) out.emplace_back(k, dense[k]);
  return out;
}

std::vector<std::vector<Rational>> row_echelon_basis(const std::vector<std::vector<Rational>>& vectors) {
  if (vectors.empty()) return {};
  SparseEchelon ech(vectors.front().size());
  for (const auto& v : vectors) ech.add_row(to_sparse(v));
  std::vector<std::vector<Rational>> out;
  for (const auto& [pc, row] : ech.pivot_rows()) {
    std::vector<Rational> dense(ech.columns());
    for (const auto& [c, v] : row) dense[c] = v;
    out.push_back(std::move(dense));
  }
  return out;
}

std::vector<std::map<Symbol, Rational>> solve_linear(const std::vector<Expr>& equations,
                                                     const std::vector<Symbol>& unknowns) {
  SparseEchelon ech(unknowns.size());
  for (const auto& eq : equations) {
    std::map<Monomial, Expr> parts;
    try {
      parts = collect(eq, unknowns);
    } catch (const NotPolynomial&) {
      throw NotLinear("equation is not polynomial in the unknowns: " + eq.to_string());
    }
    std::vector<Expr> entries(unknowns.size());
    for (const auto& [mono, coeff] : parts) {
      if (mono.degree() != 1) throw NotLinear("equation is not linear homogeneous in the unknowns: " + eq.to_string());
      const Atom& a = mono.factors().front().first;
      auto it = std::find(unknowns.begin(), unknowns.end(), a.symbol());
      entries[static_cast<std::size_t>(it - unknowns.begin())] = coeff;
    }
    for (const auto& row : split_by_monomials(entries)) ech.add_row(row);
  }
  std::vector<std::map<Symbol, Rational>> out;
  for (const auto& v : ech.nullspace()) {
    std::map<Symbol, Rational> sol;
    for (std::size_t k = 0; k < v.size(); ++k) sol.emplace(unknowns[k], v[k]);
    out.push_back(std::move(sol));
  }
  return out;
}

namespace {

// In-place elimination to row echelon form; returns the pivot columns and the sign of the row swaps.
std::vector<std::size_t> eliminate(ExprMatrix& m, int& sign, bool reduce_above) {
  std::vector<std::size_t> pivots;
  sign = 1;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m.front().size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(m[p], m[r]);
      sign = -sign;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero() || (!reduce_above && i < r)) continue;
      Expr f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

ExprMatrix inverse(const ExprMatrix& m) {
  const std::size_t n = m.size();
  ExprMatrix aug(n, std::vector<Expr>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw ValidationError("inverse requires a square matrix");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = Expr(1);
  }
  int sign = 1;
  auto pivots = eliminate(aug, sign, true);
  if (pivots.size() < n || pivots[n - 1] >= n) throw SingularMetric("matrix is singular");
  ExprMatrix out(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j] / aug[i][i];
  return out;
}

Expr determinant(const ExprMatrix& m) {
  ExprMatrix a = m;
  int sign = 1;
  auto pivots = eliminate(a, sign, false);
  if (pivots.size() < a.size()) return Expr();
  Expr det(static_cast<long>(sign));
  for (std::size_t i = 0; i < a.size(); ++i) det *= a[i][i];
  return det;
}

std::size_t rank(ExprMatrix m) {
  int sign = 1;
  return eliminate(m, sign, false).size();
}

}  // namespace liesym
