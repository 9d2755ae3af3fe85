#include "liesym/poly.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "liesym/expr.hpp"

namespace liesym {

// ---------------------------------------------------------------------------
// Atom

struct Atom::Data {
  std::optional<Symbol> sym;
  std::optional<FunctionSymbol> fn;
  std::vector<Expr> args;
  std::vector<int> slots;
};

Atom::Atom(Symbol s) : d_(std::make_shared<const Data>(Data{std::move(s), std::nullopt, {}, {}})) {}

Atom::Atom(FunctionSymbol f, std::vector<Expr> args, std::vector<int> slots) {
  std::sort(slots.begin(), slots.end());
  d_ = std::make_shared<const Data>(Data{std::nullopt, std::move(f), std::move(args), std::move(slots)});
}

bool Atom::is_symbol() const { return d_->sym.has_value(); }
const Symbol& Atom::symbol() const { return *d_->sym; }
const FunctionSymbol& Atom::function() const { return *d_->fn; }
const std::vector<Expr>& Atom::args() const { return d_->args; }
const std::vector<int>& Atom::slots() const { return d_->slots; }

Atom Atom::differentiated(int slot) const {
  std::vector<int> s = slots();
  s.push_back(slot);
  return Atom(function(), args(), std::move(s));
}

bool Atom::depends_on(const Symbol& s) const {
  if (is_symbol()) return symbol() == s;
  for (const auto& a : args())
    if (a.depends_on(s)) return true;
  return false;
}

namespace {

// Argument that is a bare symbol, if any.
std::optional<Symbol> bare_symbol(const Expr& e) {
  if (!e.is_polynomial() || e.numerator().size() != 1) return std::nullopt;
  const Term& t = e.numerator().leading();
  if (t.coeff != 1 || t.mono.factors().size() != 1 || t.mono.factors()[0].second != 1) return std::nullopt;
  const Atom& a = t.mono.factors()[0].first;
  if (!a.is_symbol()) return std::nullopt;
  return a.symbol();
}

}  // namespace

std::string Atom::to_string() const {
  if (is_symbol()) return symbol().name();
  std::string call = function().name() + "(";
  for (std::size_t i = 0; i < args().size(); ++i) {
    if (i) call += ",";
    call += args()[i].to_string();
  }
  call += ")";
  if (slots().empty()) return call;
  // diff(F(t,x,u),x,x) when the differentiated slots hold bare symbols, else a slot form.
  std::string out = "diff(" + call;
  bool bare = true;
  std::string suffix;
  for (int s : slots()) {
    auto b = bare_symbol(args()[static_cast<std::size_t>(s)]);
    if (!b) {
      bare = false;
      break;
    }
    suffix += "," + b->name();
  }
  if (bare) return out + suffix + ")";
  std::string idx;
  for (std::size_t i = 0; i < slots().size(); ++i) idx += (i ? "," : "") + std::to_string(slots()[i]);
  return "D[" + idx + "](" + function().name() + ")" + call.substr(function().name().size());
}

int Atom::compare(const Atom& a, const Atom& b) {
  if (a.d_ == b.d_) return 0;
  if (a.is_symbol() != b.is_symbol()) return a.is_symbol() ? -1 : 1;
  if (a.is_symbol()) return Symbol::compare(a.symbol(), b.symbol());
  if (int c = FunctionSymbol::compare(a.function(), b.function())) return c;
  if (a.slots() != b.slots()) {
    if (a.slots().size() != b.slots().size()) return a.slots().size() < b.slots().size() ? -1 : 1;
    return a.slots() < b.slots() ? -1 : 1;
  }
  if (a.args().size() != b.args().size()) return a.args().size() < b.args().size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (int c = Expr::compare(a.args()[i], b.args()[i])) return c;
  return 0;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::of(const Atom& a, int exponent) {
  Monomial m;
  if (exponent != 0) {
    m.factors_.emplace_back(a, exponent);
    m.degree_ = exponent;
  }
  return m;
}

int Monomial::exponent(const Atom& a) const {
  for (const auto& [atom, e] : factors_)
    if (atom == a) return e;
  return 0;
}

Monomial Monomial::without(const Atom& a) const {
  Monomial m;
  for (const auto& f : factors_)
    if (!(f.first == a)) {
      m.factors_.push_back(f);
      m.degree_ += f.second;
    }
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  m.factors_.reserve(factors_.size() + o.factors_.size());
  std::size_t i = 0, j = 0;
  while (i < factors_.size() || j < o.factors_.size()) {
    if (j == o.factors_.size()) {
      m.factors_.push_back(factors_[i++]);
    } else if (i == factors_.size()) {
      m.factors_.push_back(o.factors_[j++]);
    } else {
      int c = Atom::compare(factors_[i].first, o.factors_[j].first);
      if (c < 0) {
        m.factors_.push_back(factors_[i++]);
      } else if (c > 0) {
        m.factors_.push_back(o.factors_[j++]);
      } else {
        m.factors_.emplace_back(factors_[i].first, factors_[i].second + o.factors_[j].second);
        ++i;
        ++j;
      }
    }
  }
  m.degree_ = degree_ + o.degree_;
  return m;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
  if (o.degree_ > degree_) return std::nullopt;
  Monomial m;
  std::size_t i = 0, j = 0;
  while (i < factors_.size()) {
    if (j < o.factors_.size()) {
      int c = Atom::compare(factors_[i].first, o.factors_[j].first);
      if (c > 0) return std::nullopt;
      if (c == 0) {
        int e = factors_[i].second - o.factors_[j].second;
        if (e < 0) return std::nullopt;
        if (e > 0) m.factors_.emplace_back(factors_[i].first, e);
        ++i;
        ++j;
        continue;
      }
    }
    m.factors_.push_back(factors_[i++]);
  }
  if (j != o.factors_.size()) return std::nullopt;
  m.degree_ = degree_ - o.degree_;
  return m;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [atom, e] : factors_) {
    if (!out.empty()) out += "*";
    out += atom.to_string();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
  std::size_t n = std::min(a.factors_.size(), b.factors_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = Atom::compare(a.factors_[i].first, b.factors_[i].first);
    if (c != 0) return c < 0 ? 1 : -1;
    if (a.factors_[i].second != b.factors_[i].second) return a.factors_[i].second < b.factors_[i].second ? -1 : 1;
  }
  if (a.factors_.size() != b.factors_.size()) return a.factors_.size() < b.factors_.size() ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial(), c});
}

Poly::Poly(const Atom& a) { terms_.push_back({Monomial::of(a), Rational(1)}); }

Poly::Poly(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.push_back({m, c});
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return Monomial::compare(a.mono, b.mono) > 0; });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return 0;
  const Term& last = terms_.back();
  return last.mono.is_one() ? last.coeff : Rational(0);
}

int Poly::total_degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }

int Poly::degree_in(const Atom& a) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(a));
  return d;
}

std::vector<Atom> Poly::atoms() const {
  std::vector<Atom> out;
  for (const auto& t : terms_)
    for (const auto& f : t.mono.factors()) out.push_back(f.first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Poly::contains(const Atom& a) const {
  for (const auto& t : terms_)
    if (t.mono.exponent(a) != 0) return true;
  return false;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return o;
  Poly p;
  p.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = Monomial::compare(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      p.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      p.terms_.push_back(o.terms_[j++]);
    } else {
      Rational s = terms_[i].coeff + o.terms_[j].coeff;
      if (s != 0) p.terms_.push_back({terms_[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) p.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) p.terms_.push_back(o.terms_[j]);
  return p;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (terms_.empty() || o.terms_.empty()) return Poly();
  if (o.is_constant()) return scaled(o.terms_[0].coeff);
  if (is_constant()) return o.scaled(terms_[0].coeff);
  if (o.terms_.size() == 1) return times(o.terms_[0].mono, o.terms_[0].coeff);
  if (terms_.size() == 1) return o.times(terms_[0].mono, terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) prod.push_back({a.mono * b.mono, a.coeff * b.coeff});
  return from_terms(std::move(prod));
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return Poly();
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Poly Poly::times(const Monomial& m, const Rational& c) const {
  if (c == 0) return Poly();
  // Multiplication by a monomial preserves the term order.
  Poly p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
  return p;
}

Poly Poly::pow(unsigned e) const {
  Poly result(Rational(1));
  Poly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  assert(!d.is_zero());
  if (is_zero()) return Poly();
  if (d.is_constant()) return scaled(1 / d.terms_[0].coeff);
  if (total_degree() < d.total_degree()) return std::nullopt;
  const Term& lead = d.leading();
  std::vector<Term> quotient;
  Poly r = *this;
  while (!r.is_zero()) {
    auto m = r.leading().mono.divide(lead.mono);
    if (!m) return std::nullopt;
    Rational c = r.leading().coeff / lead.coeff;
    r = r - d.times(*m, c);
    quotient.push_back({std::move(*m), std::move(c)});
  }
  // Quotient terms were produced in descending order.
  Poly q;
  q.terms_ = std::move(quotient);
  return q;
}

Poly Poly::derivative(const Atom& a) const {
  Poly p;
  for (const auto& t : terms_) {
    int e = t.mono.exponent(a);
    if (e == 0) continue;
    Monomial m = t.mono.without(a) * Monomial::of(a, e - 1);
    p.terms_.push_back({std::move(m), t.coeff * e});
  }
  return p;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    std::string body;
    Rational c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (t.mono.is_one()) {
      body = rational_to_string(c);
    } else if (c == 1) {
      body = t.mono.to_string();
    } else {
      body = rational_to_string(c) + "*" + t.mono.to_string();
    }
    if (i == 0) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

int Poly::compare(const Poly& a, const Poly& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = Monomial::compare(a.terms_[i].mono, b.terms_[i].mono)) return c;
    int c = cmp(a.terms_[i].coeff, b.terms_[i].coeff);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------------------
// gcd machinery: recursive primitive polynomial remainder sequences.

namespace {

using UPoly = std::vector<Poly>;  // coefficient of v^k at index k

UPoly to_univariate(const Poly& p, const Atom& v) {
  std::vector<std::vector<Term>> buckets;
  for (const auto& t : p.terms()) {
    auto e = static_cast<std::size_t>(t.mono.exponent(v));
    if (buckets.size() <= e) buckets.resize(e + 1);
    buckets[e].push_back({t.mono.without(v), t.coeff});
  }
  UPoly u;
  u.reserve(buckets.size());
  for (auto& b : buckets) u.push_back(Poly::from_terms(std::move(b)));
  return u;
}

Poly from_univariate(const UPoly& u, const Atom& v) {
  Poly p;
  for (std::size_t k = 0; k < u.size(); ++k)
    if (!u[k].is_zero()) p = p + u[k].times(Monomial::of(v, static_cast<int>(k)), Rational(1));
  return p;
}

void trim(UPoly& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Poly content_of(const UPoly& u) {
  Poly g;
  for (const auto& c : u) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

UPoly divide_coefficients(const UPoly& u, const Poly& c) {
  UPoly out;
  out.reserve(u.size());
  for (const auto& x : u) {
    auto q = x.divide_exact(c);
    assert(q);
    out.push_back(std::move(*q));
  }
  return out;
}

// lc(b)^k * a mod b, without the final power normalization.
UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  const std::size_t db = b.size() - 1;
  const Poly& lcb = b.back();
  trim(a);
  while (!a.empty() && a.size() - 1 >= db) {
    std::size_t shift = a.size() - 1 - db;
    Poly lca = a.back();
    for (auto& c : a) c = c * lcb;
    for (std::size_t k = 0; k <= db; ++k) a[k + shift] = a[k + shift] - lca * b[k];
    a.back() = Poly();
    trim(a);
  }
  return a;
}

Poly univariate_gcd(UPoly a, UPoly b, const Atom& v) {
  if (a.size() < b.size()) std::swap(a, b);
  while (true) {
    UPoly r = pseudo_remainder(a, b);
    if (r.empty()) return primitive(from_univariate(b, v));
    if (r.size() == 1) return Poly(Rational(1));
    Poly c = content_of(r);
    r = divide_coefficients(r, c);
    a = std::move(b);
    b = std::move(r);
  }
}

// Coefficients in v of p with every other atom replaced by its value in `point`.
std::vector<Rational> univariate_image(const Poly& p, const Atom& v, const std::map<Atom, Integer>& point) {
  std::vector<Rational> out(static_cast<std::size_t>(p.degree_in(v)) + 1);
  for (const auto& t : p.terms()) {
    Rational value = t.coeff;
    int k = 0;
    for (const auto& [atom, e] : t.mono.factors()) {
      if (atom == v) {
        k = e;
        continue;
      }
      Integer power;
      mpz_pow_ui(power.get_mpz_t(), point.at(atom).get_mpz_t(), static_cast<unsigned long>(e));
      value *= power;
    }
    out[static_cast<std::size_t>(k)] += value;
  }
  return out;
}

void trim(std::vector<Rational>& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

// Degree of the monic gcd of two univariate polynomials over the rationals.
int image_gcd_degree(std::vector<Rational> a, std::vector<Rational> b) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      Rational q = a.back() / b.back();
      std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= q * b[k];
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// Upper bound on deg_v gcd(a, b) from an evaluation image whose leading coefficients survive.
std::optional<int> gcd_degree_bound(const Poly& a, const Poly& b, const Atom& v) {
  std::vector<Atom> others;
  for (const auto& x : a.atoms())
    if (!(x == v)) others.push_back(x);
  for (const auto& x : b.atoms())
    if (!(x == v) && !std::binary_search(others.begin(), others.end(), x)) others.push_back(x);
  std::sort(others.begin(), others.end());
  static const int primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::map<Atom, Integer> point;
    for (std::size_t i = 0; i < others.size(); ++i)
      point.emplace(others[i], Integer(primes[(i + 5 * attempt) % 14] * (attempt + 1) + static_cast<int>(i)));
    auto ia = univariate_image(a, v, point);
    auto ib = univariate_image(b, v, point);
    if (ia.back() == 0 || ib.back() == 0) continue;
    return image_gcd_degree(std::move(ia), std::move(ib));
  }
  return std::nullopt;
}

}  // namespace

Poly primitive(const Poly& p) {
  if (p.is_zero()) return p;
  Integer den_lcm = 1;
  Integer num_gcd = 0;
  for (const auto& t : p.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.leading().coeff < 0) scale = -scale;
  return p.scaled(scale);
}

Poly content_in(const Poly& p, const Atom& a) { return content_of(to_univariate(p, a)); }

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return primitive(b);
  if (b.is_zero()) return primitive(a);
  if (a.is_constant() || b.is_constant()) return Poly(Rational(1));
  Poly pa = primitive(a);
  Poly pb = primitive(b);
  if (pa == pb) return pa;
  const auto va = pa.atoms();
  const auto vb = pb.atoms();
  // A variable present in only one operand can only contribute through that operand's content.
  for (const auto& v : va)
    if (!std::binary_search(vb.begin(), vb.end(), v)) return gcd(content_in(pa, v), pb);
  for (const auto& v : vb)
    if (!std::binary_search(va.begin(), va.end(), v)) return gcd(pa, content_in(pb, v));
  // Monomial operands: the gcd is the common power product.
  if (pa.size() == 1 || pb.size() == 1) {
    const Poly& mono = pa.size() == 1 ? pa : pb;
    const Poly& other = pa.size() == 1 ? pb : pa;
    Monomial g;
    for (const auto& [atom, e] : mono.leading().mono.factors()) {
      int m = e;
      for (const auto& t : other.terms()) m = std::min(m, t.mono.exponent(atom));
      if (m > 0) g = g * Monomial::of(atom, m);
    }
    return Poly(g, Rational(1));
  }
  // Main variable of least degree keeps remainder sequences short.
  Atom v = va.front();
  int best = pa.degree_in(v) + pb.degree_in(v);
  for (const auto& x : va) {
    int d = pa.degree_in(x) + pb.degree_in(x);
    if (d < best) {
      best = d;
      v = x;
    }
  }
  if (auto bound = gcd_degree_bound(pa, pb, v)) {
    if (*bound == 0) return gcd(content_in(pa, v), content_in(pb, v));
    if (*bound == pb.degree_in(v) && pa.divide_exact(pb)) return pb;
    if (*bound == pa.degree_in(v) && pb.divide_exact(pa)) return pa;
  }
  UPoly ua = to_univariate(pa, v);
  UPoly ub = to_univariate(pb, v);
  Poly ca = content_of(ua);
  Poly cb = content_of(ub);
  Poly c = gcd(ca, cb);
  Poly g = univariate_gcd(divide_coefficients(ua, ca), divide_coefficients(ub, cb), v);
  return primitive(c * g);
}

std::vector<std::pair<Poly, int>> squarefree_factors(const Poly& p) {
  std::vector<std::pair<Poly, int>> out;
  if (p.is_constant()) return out;
  const Atom v = p.atoms().front();
  Poly cont = content_in(p, v);
  Poly a = primitive(*p.divide_exact(cont));
  // Yun's algorithm in v.
  Poly b = a.derivative(v);
  Poly c = gcd(a, b);
  Poly w = *a.divide_exact(c);
  Poly y = *b.divide_exact(c);
  Poly z = y - w.derivative(v);
  for (int i = 1; !w.is_constant(); ++i) {
    Poly g = gcd(w, z);
    if (!g.is_constant()) out.emplace_back(g, i);
    w = *w.divide_exact(g);
    y = *z.divide_exact(g);
    z = y - w.derivative(v);
  }
  for (auto& f : squarefree_factors(cont)) out.push_back(std::move(f));
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    if (l.second != r.second) return l.second < r.second;
    return Poly::compare(l.first, r.first) > 0;
  });
  return out;
}

}  // namespace liesym
