#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liesym/symbol.hpp"

namespace liesym {

using Rational = mpq_class;
using Integer = mpz_class;

class Expr;

/// Polynomial variable: a symbol, or an opaque function application, possibly differentiated
/// with respect to some of its argument slots.
class Atom {
 public:
  explicit Atom(Symbol s);
  /// `slots` is a multiset of argument positions to differentiate against; it is sorted on entry.
  Atom(FunctionSymbol f, std::vector<Expr> args, std::vector<int> slots = {});

  bool is_symbol() const;
  const Symbol& symbol() const;
  const FunctionSymbol& function() const;
  const std::vector<Expr>& args() const;
  const std::vector<int>& slots() const;

  /// The same application differentiated once more with respect to argument `slot`.
  Atom differentiated(int slot) const;

  bool depends_on(const Symbol& s) const;
  std::string to_string() const;

  friend bool operator==(const Atom& a, const Atom& b) { return compare(a, b) == 0; }
  friend bool operator<(const Atom& a, const Atom& b) { return compare(a, b) < 0; }
  static int compare(const Atom& a, const Atom& b);

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
};

/// Power product of atoms, stored sorted by atom order.
class Monomial {
 public:
  Monomial() = default;
  static Monomial of(const Atom& a, int exponent = 1);

  const std::vector<std::pair<Atom, int>>& factors() const { return factors_; }
  int degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }
  int exponent(const Atom& a) const;
  Monomial without(const Atom& a) const;
  Monomial operator*(const Monomial& o) const;
  std::optional<Monomial> divide(const Monomial& o) const;
  std::string to_string() const;

  /// Graded lexicographic order; earlier atoms are more significant.
  static int compare(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return compare(a, b) == 0; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }

 private:
  std::vector<std::pair<Atom, int>> factors_;
  int degree_ = 0;
};

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse multivariate polynomial over the rationals, terms in strictly descending
/// monomial order with nonzero coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rational& c);
  explicit Poly(const Atom& a);
  Poly(const Monomial& m, const Rational& c);
  /// Sorts and merges arbitrary terms.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_value() const;
  const Term& leading() const { return terms_.front(); }
  int total_degree() const;
  int degree_in(const Atom& a) const;
  /// Distinct atoms, sorted.
  std::vector<Atom> atoms() const;
  bool contains(const Atom& a) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& c) const;
  Poly times(const Monomial& m, const Rational& c) const;
  Poly pow(unsigned e) const;
  std::optional<Poly> divide_exact(const Poly& d) const;
  /// Formal derivative treating `a` as an independent variable.
  Poly derivative(const Atom& a) const;

  std::string to_string() const;

  static int compare(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return compare(a, b) == 0; }

 private:
  std::vector<Term> terms_;
};

/// Greatest common divisor normalized to integer coefficients with unit content and a
/// positive leading coefficient. gcd(0, 0) is 0; any nonzero constant operand gives 1.
Poly gcd(const Poly& a, const Poly& b);
/// Content with respect to `a`: the gcd of the coefficients of `p` viewed as a polynomial in `a`.
Poly content_in(const Poly& p, const Atom& a);
/// `p` scaled to integer coefficients with gcd 1 and positive leading coefficient.
Poly primitive(const Poly& p);
/// Square-free decomposition: p = c * prod(factor_i ^ multiplicity_i), factors primitive.
std::vector<std::pair<Poly, int>> squarefree_factors(const Poly& p);

std::string rational_to_string(const Rational& r);

}  // namespace liesym
