#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "liesym/poly.hpp"
#include "liesym/symbol.hpp"

namespace liesym {

/// Canonical symbolic expression: a reduced quotient of polynomials over the rationals whose
/// variables are symbols and opaque function applications. Structural equality coincides with
/// equality in the rational function field; zero is the polynomial 0 over 1.
class Expr {
 public:
  Expr();
  Expr(long value);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& value);  // NOLINT
  Expr(const Symbol& s);  // NOLINT
  explicit Expr(const Atom& a);
  explicit Expr(const Poly& p);
  /// num/den reduced to lowest terms; throws DivisionByZero for a zero denominator.
  static Expr quotient(const Poly& num, const Poly& den);
  static Expr apply(const FunctionSymbol& f, std::vector<Expr> args);

  const Poly& numerator() const { return rep_->num; }
  const Poly& denominator() const { return rep_->den; }
  bool is_zero() const { return rep_->num.is_zero(); }
  bool is_polynomial() const { return rep_->den.is_constant(); }
  bool is_constant() const { return rep_->num.is_constant() && rep_->den.is_constant(); }
  Rational constant_value() const;
  bool depends_on(const Symbol& s) const;
  /// All atoms of numerator and denominator (top level only), sorted.
  std::vector<Atom> atoms() const;
  /// Every symbol occurring anywhere, including inside function arguments.
  std::vector<Symbol> free_symbols() const;

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr pow(int e) const;

  /// Canonical text form, parseable by `parse`.
  std::string to_string() const;

  static int compare(const Expr& a, const Expr& b);
  friend bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
  friend bool operator<(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

 private:
  struct Rep {
    Poly num;
    Poly den;
  };
  Expr(Poly num, Poly den, bool reduced);
  std::shared_ptr<const Rep> rep_;
};

/// Canonical form of `e`. Expressions are kept canonical by construction, so this is the
/// identity; it exists to name the operation.
inline Expr simplify(const Expr& e) { return e; }

/// Partial derivative with respect to `s`. Jet symbols are independent variables; opaque
/// applications differentiate by the chain rule over their arguments.
Expr diff(const Expr& e, const Symbol& s);
Expr diff(const Expr& e, const std::vector<Symbol>& along);

/// Simultaneous substitution. A function binding maps F to a body written in F's declared
/// parameters; derivatives of F become derivatives of the body.
struct Substitution {
  std::map<Symbol, Expr> vars;
  std::map<FunctionSymbol, Expr> functions;
  bool empty() const { return vars.empty() && functions.empty(); }
};
Expr substitute(const Expr& e, const Substitution& s);
Expr substitute(const Expr& e, const Symbol& s, const Expr& value);

/// Coefficients of `e` as a polynomial in `basis`. The empty monomial holds the part free of
/// the basis. Throws NotPolynomial if a basis symbol sits in a denominator or a function argument.
std::map<Monomial, Expr> collect(const Expr& e, const std::vector<Symbol>& basis);

/// Joins coefficient*basis terms as "c1*b1 - c2*b2 + ...", parenthesizing sums and quotients.
/// Zero coefficients are skipped; an empty combination prints as "0".
std::string format_combination(const std::vector<std::pair<Expr, std::string>>& terms);

/// Node view of a canonical expression, for inspection and tests.
struct ExprNode {
  enum class Kind { Constant, Var, Sum, Product, IntPower, Apply, PartialDerivative };
  Kind kind;
  Rational value;                 // Constant
  std::string name;               // Var / Apply / PartialDerivative head
  int exponent = 0;               // IntPower
  std::vector<ExprNode> children;  // operands, base, or function arguments
  std::vector<int> slots;         // PartialDerivative
  std::string to_string() const;
};
ExprNode to_tree(const Expr& e);

}  // namespace liesym
