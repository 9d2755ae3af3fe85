#include "liesym/expr.hpp"

#include <algorithm>
#include <set>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

const Poly& one_poly() {
  static const Poly one(Rational(1));
  return one;
}

// Scale so the leading coefficient of `den` is 1.
void make_monic(Poly& num, Poly& den) {
  Rational lc = den.leading().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
}

}  // namespace

Expr::Expr() : Expr(Poly(), one_poly(), true) {}
Expr::Expr(long value) : Expr(Poly(Rational(value)), one_poly(), true) {}
Expr::Expr(const Rational& value) : Expr(Poly(value), one_poly(), true) {}
Expr::Expr(const Symbol& s) : Expr(Poly(Atom(s)), one_poly(), true) {}
Expr::Expr(const Atom& a) : Expr(Poly(a), one_poly(), true) {}
Expr::Expr(const Poly& p) : Expr(p, one_poly(), true) {}

Expr::Expr(Poly num, Poly den, bool reduced) {
  if (!reduced) {
    if (den.is_zero()) throw DivisionByZero("division by an expression that is zero");
    if (num.is_zero()) {
      den = one_poly();
    } else if (den.is_constant()) {
      num = num.scaled(1 / den.constant_value());
      den = one_poly();
    } else {
      Poly g = gcd(num, den);
      if (!g.is_constant()) {
        num = *num.divide_exact(g);
        den = *den.divide_exact(g);
      }
      if (den.is_constant()) {
        num = num.scaled(1 / den.constant_value());
        den = one_poly();
      } else {
        make_monic(num, den);
      }
    }
  }
  rep_ = std::make_shared<const Rep>(Rep{std::move(num), std::move(den)});
}

Expr Expr::quotient(const Poly& num, const Poly& den) { return Expr(num, den, false); }

Expr Expr::apply(const FunctionSymbol& f, std::vector<Expr> args) {
  if (args.size() != f.arity())
    throw Error("function '" + f.name() + "' expects " + std::to_string(f.arity()) + " arguments, got " +
                std::to_string(args.size()));
  return Expr(Atom(f, std::move(args)));
}

Rational Expr::constant_value() const { return rep_->num.constant_value(); }

bool Expr::depends_on(const Symbol& s) const {
  for (const Poly* p : {&rep_->num, &rep_->den})
    for (const auto& a : p->atoms())
      if (a.depends_on(s)) return true;
  return false;
}

std::vector<Atom> Expr::atoms() const {
  std::vector<Atom> out = rep_->num.atoms();
  for (const auto& a : rep_->den.atoms()) out.push_back(a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void gather_symbols(const Expr& e, std::set<Symbol>& out) {
  for (const auto& a : e.atoms()) {
    if (a.is_symbol()) {
      out.insert(a.symbol());
    } else {
      for (const auto& arg : a.args()) gather_symbols(arg, out);
    }
  }
}

}  // namespace

std::vector<Symbol> Expr::free_symbols() const {
  std::set<Symbol> s;
  gather_symbols(*this, s);
  return {s.begin(), s.end()};
}

Expr Expr::operator-() const { return Expr(-rep_->num, rep_->den, true); }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const Poly& da = a.denominator();
  const Poly& db = b.denominator();
  if (da.is_constant() && db.is_constant()) return Expr(a.numerator() + b.numerator());
  if (da == db) return Expr::quotient(a.numerator() + b.numerator(), da);
  Poly g = gcd(da, db);
  if (g.is_constant()) {
    // Coprime denominators: the cross sum is already in lowest terms and monic.
    return Expr(a.numerator() * db + b.numerator() * da, da * db, true);
  }
  Poly ra = *da.divide_exact(g);
  Poly rb = *db.divide_exact(g);
  Poly num = a.numerator() * rb + b.numerator() * ra;
  Poly den = da * rb;
  if (num.is_zero()) return Expr();
  Poly h = gcd(num, g);
  if (!h.is_constant()) {
    num = *num.divide_exact(h);
    den = *den.divide_exact(h);
  }
  if (den.is_constant()) return Expr(num.scaled(1 / den.constant_value()));
  make_monic(num, den);
  return Expr(std::move(num), std::move(den), true);
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  const Poly& da = a.denominator();
  const Poly& db = b.denominator();
  if (da.is_constant() && db.is_constant()) return Expr(a.numerator() * b.numerator());
  Poly na = a.numerator();
  Poly nb = b.numerator();
  Poly dA = da;
  Poly dB = db;
  if (!dB.is_constant()) {
    Poly g = gcd(na, dB);
    if (!g.is_constant()) {
      na = *na.divide_exact(g);
      dB = *dB.divide_exact(g);
    }
  }
  if (!dA.is_constant()) {
    Poly g = gcd(nb, dA);
    if (!g.is_constant()) {
      nb = *nb.divide_exact(g);
      dA = *dA.divide_exact(g);
    }
  }
  Poly num = na * nb;
  Poly den = dA * dB;
  if (den.is_constant()) return Expr(num.scaled(1 / den.constant_value()));
  make_monic(num, den);
  return Expr(std::move(num), std::move(den), true);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DivisionByZero("division by an expression that is zero");
  Poly num = b.denominator();
  Poly den = b.numerator();
  if (den.is_constant()) {
    num = num.scaled(1 / den.constant_value());
    den = one_poly();
  } else {
    make_monic(num, den);
  }
  return a * Expr(std::move(num), std::move(den), true);
}

Expr Expr::pow(int e) const {
  if (e == 0) return Expr(1);
  if (e < 0) return (Expr(1) / *this).pow(-e);
  auto ue = static_cast<unsigned>(e);
  if (rep_->den.is_constant()) return Expr(rep_->num.pow(ue));
  return Expr(rep_->num.pow(ue), rep_->den.pow(ue), true);
}

namespace {

std::string factor_string(const Poly& f, int m) {
  bool simple = f.size() == 1 && f.leading().coeff == 1 && f.leading().mono.factors().size() == 1 &&
                f.leading().mono.factors()[0].second == 1;
  std::string s = simple ? f.to_string() : "(" + f.to_string() + ")";
  if (m != 1) s += "^" + std::to_string(m);
  return s;
}

}  // namespace

std::string Expr::to_string() const {
  if (rep_->den.is_constant()) return rep_->num.to_string();
  auto factors = squarefree_factors(rep_->den);
  Poly product(Rational(1));
  for (const auto& [f, m] : factors) product = product * f.pow(static_cast<unsigned>(m));
  // den = product / lc(product), so num/den = (num * lc(product)) / product.
  Poly num = rep_->num.scaled(product.leading().coeff);
  std::string n = num.size() == 1 ? num.to_string() : "(" + num.to_string() + ")";
  std::string d;
  for (const auto& [f, m] : factors) d += (d.empty() ? "" : "*") + factor_string(f, m);
  if (factors.size() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

int Expr::compare(const Expr& a, const Expr& b) {
  if (a.rep_ == b.rep_) return 0;
  if (int c = Poly::compare(a.rep_->num, b.rep_->num)) return c;
  return Poly::compare(a.rep_->den, b.rep_->den);
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

Expr atom_diff(const Atom& a, const Symbol& s) {
  if (a.is_symbol()) return a.symbol() == s ? Expr(1) : Expr();
  Expr out;
  for (std::size_t k = 0; k < a.args().size(); ++k) {
    const Expr& arg = a.args()[k];
    if (!arg.depends_on(s)) continue;
    out += Expr(a.differentiated(static_cast<int>(k))) * diff(arg, s);
  }
  return out;
}

Expr poly_diff(const Poly& p, const Symbol& s) {
  Expr out(p.derivative(Atom(s)));
  for (const auto& a : p.atoms()) {
    if (a.is_symbol() || !a.depends_on(s)) continue;
    out += Expr(p.derivative(a)) * atom_diff(a, s);
  }
  return out;
}

}  // namespace

Expr diff(const Expr& e, const Symbol& s) {
  if (!e.depends_on(s)) return Expr();
  Expr dn = poly_diff(e.numerator(), s);
  if (e.is_polynomial()) return dn;
  Expr den(e.denominator());
  Expr dd = poly_diff(e.denominator(), s);
  if (dd.is_zero()) return dn / den;
  if (dn.is_polynomial() && dd.is_polynomial()) {
    // (N'D - ND')/D^2 with gcd(D, D') cancelled up front.
    const Poly& d = e.denominator();
    Poly g = gcd(d, dd.numerator());
    Poly d1 = *d.divide_exact(g);
    Poly d2 = *dd.numerator().divide_exact(g);
    Poly num = dn.numerator() * d1 - e.numerator() * d2;
    return Expr::quotient(num.scaled(1 / (dn.denominator().constant_value())), d1 * d);
  }
  return (dn * den - Expr(e.numerator()) * dd) / den.pow(2);
}

Expr diff(const Expr& e, const std::vector<Symbol>& along) {
  Expr out = e;
  for (const auto& s : along) out = diff(out, s);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

class Substituter {
 public:
  explicit Substituter(const Substitution& s) : s_(s) {}

  Expr expr(const Expr& e) {
    Expr num = poly(e.numerator());
    if (e.is_polynomial()) return num;
    return num / poly(e.denominator());
  }

 private:
  bool affected(const Atom& a) {
    if (auto it = affected_.find(a); it != affected_.end()) return it->second;
    bool hit = false;
    if (a.is_symbol()) {
      hit = s_.vars.count(a.symbol()) > 0;
    } else {
      hit = s_.functions.count(a.function()) > 0;
      for (const auto& arg : a.args()) {
        if (hit) break;
        for (const auto& inner : arg.atoms())
          if (affected(inner)) {
            hit = true;
            break;
          }
      }
    }
    affected_.emplace(a, hit);
    return hit;
  }

  Expr image(const Atom& a) {
    if (auto it = images_.find(a); it != images_.end()) return it->second;
    Expr out;
    if (a.is_symbol()) {
      auto it = s_.vars.find(a.symbol());
      out = it == s_.vars.end() ? Expr(a) : it->second;
    } else {
      std::vector<Expr> args;
      args.reserve(a.args().size());
      for (const auto& arg : a.args()) args.push_back(expr(arg));
      auto fit = s_.functions.find(a.function());
      if (fit == s_.functions.end()) {
        out = Expr(Atom(a.function(), std::move(args), a.slots()));
      } else {
        const auto& params = a.function().params();
        Expr body = fit->second;
        for (int slot : a.slots()) body = diff(body, params[static_cast<std::size_t>(slot)]);
        Substitution inner;
        for (std::size_t k = 0; k < params.size(); ++k) inner.vars.emplace(params[k], args[k]);
        out = substitute(body, inner);
      }
    }
    images_.emplace(a, out);
    return out;
  }

  // Evaluates sum(c * m * prod(image^e)) over a common denominator built from the images.
  Expr poly(const Poly& p) {
    std::vector<Atom> hit;
    for (const auto& a : p.atoms())
      if (affected(a)) hit.push_back(a);
    if (hit.empty()) return Expr(p);

    std::map<Atom, int> max_exp;
    for (const auto& t : p.terms())
      for (const auto& [a, e] : t.mono.factors())
        if (std::binary_search(hit.begin(), hit.end(), a)) max_exp[a] = std::max(max_exp[a], e);

    Poly common_den(Rational(1));
    for (const auto& [a, e] : max_exp) {
      const Expr& img = image(a);
      if (!img.is_polynomial()) common_den = common_den * img.denominator().pow(static_cast<unsigned>(e));
    }

    std::map<std::pair<Atom, int>, Poly> powers;
    auto power = [&](const Atom& a, int e, bool numerator) -> const Poly& {
      auto key = std::make_pair(a, numerator ? e : -e - 1);
      auto it = powers.find(key);
      if (it != powers.end()) return it->second;
      const Expr& img = image(a);
      const Poly& base = numerator ? img.numerator() : img.denominator();
      return powers.emplace(key, base.pow(static_cast<unsigned>(e))).first->second;
    };

    std::vector<Term> acc;
    for (const auto& t : p.terms()) {
      Monomial rest;
      Poly prod(Rational(1));
      for (const auto& [a, e] : t.mono.factors()) {
        if (!std::binary_search(hit.begin(), hit.end(), a)) {
          rest = rest * Monomial::of(a, e);
          continue;
        }
        prod = prod * power(a, e, true);
        const Expr& img = image(a);
        int missing = max_exp[a] - e;
        if (!img.is_polynomial() && missing > 0) prod = prod * power(a, missing, false);
      }
      // Atoms absent from this term still contribute their full denominator power.
      for (const auto& [a, e] : max_exp) {
        if (t.mono.exponent(a) != 0) continue;
        const Expr& img = image(a);
        if (!img.is_polynomial()) prod = prod * power(a, e, false);
      }
      Poly term = prod.times(rest, t.coeff);
      for (auto& x : term.terms()) acc.push_back(x);
    }
    Poly num = Poly::from_terms(std::move(acc));
    if (common_den.is_constant()) return Expr(num.scaled(1 / common_den.constant_value()));
    return Expr::quotient(num, common_den);
  }

  const Substitution& s_;
  std::map<Atom, bool> affected_;
  std::map<Atom, Expr> images_;
};

}  // namespace

Expr substitute(const Expr& e, const Substitution& s) {
  if (s.empty()) return e;
  return Substituter(s).expr(e);
}

Expr substitute(const Expr& e, const Symbol& s, const Expr& value) {
  Substitution sub;
  sub.vars.emplace(s, value);
  return substitute(e, sub);
}

// ---------------------------------------------------------------------------
// Collection

std::map<Monomial, Expr> collect(const Expr& e, const std::vector<Symbol>& basis) {
  std::vector<Atom> basis_atoms;
  basis_atoms.reserve(basis.size());
  for (const auto& s : basis) basis_atoms.emplace_back(s);
  std::sort(basis_atoms.begin(), basis_atoms.end());
  auto is_basis = [&](const Atom& a) { return std::binary_search(basis_atoms.begin(), basis_atoms.end(), a); };

  for (const auto& a : e.atoms()) {
    if (a.is_symbol()) continue;
    for (const auto& s : basis)
      if (a.depends_on(s))
        throw NotPolynomial("'" + s.name() + "' occurs inside the argument of " + a.to_string());
  }
  for (const auto& a : e.denominator().atoms())
    if (is_basis(a)) throw NotPolynomial("'" + a.to_string() + "' occurs in a denominator");

  std::map<Monomial, std::vector<Term>> buckets;
  for (const auto& t : e.numerator().terms()) {
    Monomial key;
    Monomial rest;
    for (const auto& [a, x] : t.mono.factors()) {
      if (is_basis(a))
        key = key * Monomial::of(a, x);
      else
        rest = rest * Monomial::of(a, x);
    }
    buckets[key].push_back({std::move(rest), t.coeff});
  }
  std::map<Monomial, Expr> out;
  for (auto& [key, terms] : buckets) {
    Poly c = Poly::from_terms(std::move(terms));
    out.emplace(key, e.is_polynomial() ? Expr(c) : Expr::quotient(c, e.denominator()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Node view

namespace {

ExprNode constant_node(const Rational& c) {
  ExprNode n{ExprNode::Kind::Constant, c, {}, 0, {}, {}};
  return n;
}

ExprNode atom_node(const Atom& a) {
  if (a.is_symbol()) return ExprNode{ExprNode::Kind::Var, 0, a.symbol().name(), 0, {}, {}};
  ExprNode apply{ExprNode::Kind::Apply, 0, a.function().name(), 0, {}, {}};
  for (const auto& arg : a.args()) apply.children.push_back(to_tree(arg));
  if (a.slots().empty()) return apply;
  ExprNode d{ExprNode::Kind::PartialDerivative, 0, a.function().name(), 0, {apply}, a.slots()};
  return d;
}

ExprNode power_node(ExprNode base, int e) {
  if (e == 1) return base;
  ExprNode n{ExprNode::Kind::IntPower, 0, {}, e, {std::move(base)}, {}};
  return n;
}

void push_flat(ExprNode::Kind kind, std::vector<ExprNode>& into, ExprNode n) {
  if (n.kind == kind) {
    for (auto& c : n.children) into.push_back(std::move(c));
  } else {
    into.push_back(std::move(n));
  }
}

ExprNode term_node(const Term& t) {
  std::vector<ExprNode> factors;
  if (t.coeff != 1 || t.mono.is_one()) factors.push_back(constant_node(t.coeff));
  for (const auto& [a, e] : t.mono.factors()) factors.push_back(power_node(atom_node(a), e));
  if (factors.size() == 1) return factors[0];
  return ExprNode{ExprNode::Kind::Product, 0, {}, 0, std::move(factors), {}};
}

ExprNode poly_node(const Poly& p) {
  if (p.is_zero()) return constant_node(0);
  if (p.size() == 1) return term_node(p.leading());
  ExprNode sum{ExprNode::Kind::Sum, 0, {}, 0, {}, {}};
  for (const auto& t : p.terms()) sum.children.push_back(term_node(t));
  return sum;
}

}  // namespace

ExprNode to_tree(const Expr& e) {
  if (e.is_polynomial()) return poly_node(e.numerator());
  auto factors = squarefree_factors(e.denominator());
  Poly product(Rational(1));
  for (const auto& [f, m] : factors) product = product * f.pow(static_cast<unsigned>(m));
  std::vector<ExprNode> parts;
  push_flat(ExprNode::Kind::Product, parts, poly_node(e.numerator().scaled(product.leading().coeff)));
  for (const auto& [f, m] : factors) parts.push_back(power_node(poly_node(f), -m));
  if (parts.size() == 1) return parts[0];
  return ExprNode{ExprNode::Kind::Product, 0, {}, 0, std::move(parts), {}};
}

std::string ExprNode::to_string() const {
  auto list = [&](const std::string& head) {
    std::string s = head + "(";
    for (std::size_t i = 0; i < children.size(); ++i) s += (i ? "," : "") + children[i].to_string();
    return s + ")";
  };
  switch (kind) {
    case Kind::Constant:
      return "Constant(" + rational_to_string(value) + ")";
    case Kind::Var:
      return name;
    case Kind::Sum:
      return list("Sum");
    case Kind::Product:
      return list("Product");
    case Kind::IntPower:
      return "IntPower(" + children[0].to_string() + "," + std::to_string(exponent) + ")";
    case Kind::Apply:
      return list(name);
    case Kind::PartialDerivative: {
      std::string s = "PartialDerivative(" + children[0].to_string() + ";";
      for (std::size_t i = 0; i < slots.size(); ++i) s += (i ? "," : "") + std::to_string(slots[i]);
      return s + ")";
    }
  }
  return {};
}

std::string format_combination(const std::vector<std::pair<Expr, std::string>>& terms) {
  std::string out;
  for (const auto& [coeff, basis] : terms) {
    if (coeff.is_zero()) continue;
    bool negative = false;
    Expr c = coeff;
    if (c.is_polynomial() && c.numerator().size() == 1 && c.numerator().leading().coeff < 0) {
      negative = true;
      c = -c;
    }
    std::string piece;
    if (c == Expr(1)) {
      piece = basis;
    } else {
      std::string text = c.to_string();
      bool wrap = !c.is_polynomial() || c.numerator().size() > 1;
      piece = (wrap ? "(" + text + ")" : text) + "*" + basis;
    }
    if (out.empty()) {
      out = negative ? "-" + piece : piece;
    } else {
      out += negative ? " - " + piece : " + " + piece;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace liesym
