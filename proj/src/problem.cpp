#include "liesym/problem.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

struct Entry {
  std::string key;
  Expr value;
  int line;
  int column;
};

class ProblemParser {
 public:
  explicit ProblemParser(std::string_view text) : tokens_(tokenize(text)) {}

  Problem run() {
    while (peek().kind != Token::Kind::End) statement();
    if (!declared_) declare();
    if (!g_) throw ParseError("missing block 'metric g'", peek().line, peek().column);
    if (!h_metric_ && !h_connection_) throw ParseError("missing block 'metric H' or 'connection H'", peek().line, peek().column);

    Metric g(Chart(x_), metric_components(*g_, x_));
    DependentGeometry h = h_metric_ ? DependentGeometry(Metric(Chart(u_), metric_components(*h_metric_, u_)))
                                    : DependentGeometry(Connection(Chart(u_), connection_components(*h_connection_)));
    std::vector<Expr> F(u_.size());
    if (F_)
      for (const auto& e : *F_) {
        auto it = std::find_if(u_.begin(), u_.end(), [&](const Symbol& s) { return s.name() == e.key; });
        if (it == u_.end()) throw ParseError("'" + e.key + "' is not a dependent variable", e.line, e.column);
        F[static_cast<std::size_t>(it - u_.begin())] = e.value;
      }
    Problem p{BimetricSystem(*t_, Chart(x_), Chart(u_), std::move(g), std::move(h), std::move(F)), table_, degree_,
              t_degree_};
    return p;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != Token::Kind::End) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& what, const Token& t) const { throw ParseError(what, t.line, t.column); }
  bool is_punct(const char* p) const { return peek().kind == Token::Kind::Punct && peek().text == p; }
  void expect(const char* p) {
    if (!is_punct(p)) {
      const Token& t = peek();
      fail(std::string("expected '") + p + "' but found " + (t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'"),
           t);
    }
    next();
  }
  const Token& identifier(const std::string& what) {
    if (peek().kind != Token::Kind::Identifier) fail("expected " + what, peek());
    return next();
  }

  void statement() {
    const Token& kw = identifier("a declaration or block");
    if (kw.text == "time" || kw.text == "indep" || kw.text == "dep") {
      if (declared_) fail("declaration '" + kw.text + "' after the first block", kw);
      std::vector<Token> names;
      while (peek().kind == Token::Kind::Identifier) names.push_back(next());
      expect(";");
      if (names.empty()) fail("'" + kw.text + "' needs at least one name", kw);
      for (const auto& n : names) {
        if (used_.count(n.text)) fail("duplicate name '" + n.text + "'", n);
        used_.insert(n.text);
      }
      if (kw.text == "time") {
        if (names.size() != 1) fail("exactly one time variable is allowed", kw);
        if (t_) fail("time variable declared twice", kw);
        t_ = Symbol::time(names[0].text);
      } else {
        auto& target = kw.text == "indep" ? x_ : u_;
        for (const auto& n : names) {
          int index = static_cast<int>(target.size()) + 1;
          target.push_back(kw.text == "indep" ? Symbol::independent(n.text, index) : Symbol::dependent(n.text, index));
        }
      }
      return;
    }
    if (!declared_) declare();
    if (kw.text == "metric" || kw.text == "connection") {
      const Token& which = identifier("'g' or 'H'");
      if (which.text != "g" && which.text != "H") fail("expected 'g' or 'H'", which);
      if (kw.text == "connection" && which.text == "g") fail("g must be given as a metric", which);
      auto entries = block();
      if (which.text == "g") {
        if (g_) fail("metric g given twice", which);
        g_ = std::move(entries);
      } else {
        if (h_metric_ || h_connection_) fail("H given twice", which);
        (kw.text == "metric" ? h_metric_ : h_connection_) = std::move(entries);
      }
    } else if (kw.text == "F") {
      if (F_) fail("F given twice", kw);
      F_ = block();
    } else if (kw.text == "options") {
      options();
    } else {
      fail("unknown block '" + kw.text + "'", kw);
    }
  }

  void declare() {
    declared_ = true;
    if (!t_) {
      if (used_.count("t")) fail("no time variable declared and 't' is taken", peek());
      t_ = Symbol::time("t");
    }
    if (x_.empty()) fail("no independent variables declared", peek());
    if (u_.empty()) fail("no dependent variables declared", peek());
    table_.declare(*t_);
    for (const auto& s : x_) table_.declare(s);
    for (const auto& s : u_) table_.declare(s);
  }

  std::vector<Entry> block() {
    expect("{");
    std::vector<Entry> out;
    while (!is_punct("}")) {
      const Token& key = identifier("a component key");
      expect("=");
      ExprParser p(tokens_, table_, pos_);
      Expr value = p.parse_expression();
      pos_ = p.position();
      expect(";");
      for (const auto& e : out)
        if (e.key == key.text) fail("component '" + key.text + "' given twice", key);
      out.push_back({key.text, value, key.line, key.column});
    }
    expect("}");
    return out;
  }

  void options() {
    expect("{");
    while (!is_punct("}")) {
      const Token& key = identifier("an option name");
      expect("=");
      bool negative = false;
      if (is_punct("-")) {
        next();
        negative = true;
      }
      const Token& v = next();
      if (v.kind != Token::Kind::Integer) fail("option values are integers", v);
      int value = std::stoi(v.text) * (negative ? -1 : 1);
      expect(";");
      if (key.text == "degree") {
        degree_ = value;
      } else if (key.text == "t_degree") {
        t_degree_ = value;
      } else {
        fail("unknown option '" + key.text + "'", key);
      }
    }
    expect("}");
  }

  // Splits a key into consecutive coordinate names; exactly one split must exist.
  std::vector<std::size_t> split(const std::string& key, const std::vector<Symbol>& coords, std::size_t parts,
                                 const Entry& e) const {
    std::vector<std::vector<std::size_t>> found;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
      if (cur.size() == parts) {
        if (pos == key.size()) found.push_back(cur);
        return;
      }
      for (std::size_t k = 0; k < coords.size(); ++k) {
        const auto& name = coords[k].name();
        if (key.compare(pos, name.size(), name) == 0) {
          cur.push_back(k);
          self(self, pos + name.size());
          cur.pop_back();
        }
      }
    };
    rec(rec, 0);
    if (found.empty()) throw ParseError("'" + key + "' does not name a component", e.line, e.column);
    if (found.size() > 1) throw ParseError("component key '" + key + "' is ambiguous", e.line, e.column);
    return found[0];
  }

  ExprMatrix metric_components(const std::vector<Entry>& entries, const std::vector<Symbol>& coords) const {
    const std::size_t d = coords.size();
    ExprMatrix m(d, std::vector<Expr>(d));
    std::vector<std::vector<bool>> set(d, std::vector<bool>(d, false));
    for (const auto& e : entries) {
      auto ij = split(e.key, coords, 2, e);
      std::size_t i = ij[0], j = ij[1];
      if (set[i][j] && !(m[i][j] == e.value))
        throw ParseError("component '" + e.key + "' conflicts with its transpose", e.line, e.column);
      m[i][j] = m[j][i] = e.value;
      set[i][j] = set[j][i] = true;
    }
    return m;
  }

  std::vector<ExprMatrix> connection_components(const std::vector<Entry>& entries) const {
    const std::size_t d = u_.size();
    std::vector<ExprMatrix> c(d, ExprMatrix(d, std::vector<Expr>(d)));
    std::vector<std::vector<std::vector<bool>>> set(d, std::vector<std::vector<bool>>(d, std::vector<bool>(d, false)));
    for (const auto& e : entries) {
      std::optional<std::vector<std::size_t>> abc;
      for (std::size_t us = e.key.find('_'); us != std::string::npos; us = e.key.find('_', us + 1)) {
        auto head = std::find_if(u_.begin(), u_.end(), [&](const Symbol& s) { return s.name() == e.key.substr(0, us); });
        if (head == u_.end()) continue;
        auto bc = split(e.key.substr(us + 1), u_, 2, e);
        abc = std::vector<std::size_t>{static_cast<std::size_t>(head - u_.begin()), bc[0], bc[1]};
        break;
      }
      if (!abc) throw ParseError("connection key '" + e.key + "' must read A_BC", e.line, e.column);
      std::size_t a = (*abc)[0], b = (*abc)[1], cc = (*abc)[2];
      if (set[a][b][cc] && !(c[a][b][cc] == e.value))
        throw ParseError("component '" + e.key + "' conflicts with its symmetric partner", e.line, e.column);
      c[a][b][cc] = c[a][cc][b] = e.value;
      set[a][b][cc] = set[a][cc][b] = true;
    }
    return c;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool declared_ = false;
  std::set<std::string> used_;
  std::optional<Symbol> t_;
  std::vector<Symbol> x_, u_;
  SymbolTable table_;
  std::optional<std::vector<Entry>> g_, h_metric_, h_connection_, F_;
  std::optional<int> degree_, t_degree_;
};

}  // namespace

Problem parse_problem(std::string_view text) { return ProblemParser(text).run(); }

Generator parse_generator(std::string_view text, const Problem& p) {
  const auto& jets = p.system.jets();
  SymbolTable table = p.table;
  std::vector<Symbol> basis;
  std::vector<Symbol> coords{jets.time()};
  coords.insert(coords.end(), jets.space().begin(), jets.space().end());
  coords.insert(coords.end(), jets.dependent().begin(), jets.dependent().end());
  for (const auto& c : coords) {
    basis.push_back(Symbol::parameter("d/d" + c.name()));
    table.declare_basis_vector(c.name(), basis.back());
  }
  Expr e = parse(text, table);
  std::vector<Expr> comps(coords.size());
  for (const auto& [mono, c] : collect(e, basis)) {
    if (mono.degree() != 1) throw ParseError("a generator must be a linear combination of d/d<coordinate>", 1, 1);
    const Symbol& b = mono.factors()[0].first.symbol();
    comps[static_cast<std::size_t>(std::find(basis.begin(), basis.end(), b) - basis.begin())] = c;
  }
  return Generator::from_components(comps, jets.n(), jets.m());
}

std::string echo_problem(const Problem& p) {
  const auto& sys = p.system;
  std::ostringstream out;
  auto names = [](const std::vector<Symbol>& s) {
    std::string r;
    for (const auto& x : s) r += " " + x.name();
    return r;
  };
  out << "time " << sys.t.name() << ";\n";
  out << "indep" << names(sys.x.coords) << ";\n";
  out << "dep" << names(sys.u.coords) << ";\n";
  auto metric = [&](const std::string& label, const Metric& m) {
    out << "metric " << label << " {";
    const auto& c = m.chart.coords;
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i; j < c.size(); ++j)
        if (!m(i, j).is_zero()) out << " " << c[i].name() << c[j].name() << " = " << m(i, j).to_string() << ";";
    out << " }\n";
  };
  metric("g", sys.g);
  if (const auto* h = std::get_if<Metric>(&sys.H)) {
    metric("H", *h);
  } else {
    const auto& G = std::get<Connection>(sys.H);
    const auto& c = G.chart.coords;
    out << "connection H {";
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = 0; b < c.size(); ++b)
        for (std::size_t d = b; d < c.size(); ++d)
          if (!G(a, b, d).is_zero())
            out << " " << c[a].name() << "_" << c[b].name() << c[d].name() << " = " << G(a, b, d).to_string() << ";";
    out << " }\n";
  }
  out << "F {";
  for (std::size_t a = 0; a < sys.m(); ++a) out << " " << sys.u.coords[a].name() << " = " << sys.F[a].to_string() << ";";
  out << " }\n";
  if (p.degree || p.t_degree) {
    out << "options {";
    if (p.degree) out << " degree = " << *p.degree << ";";
    if (p.t_degree) out << " t_degree = " << *p.t_degree << ";";
    out << " }\n";
  }
  return out.str();
}

}  // namespace liesym
