#include "liesym/parser.hpp"

#include <cctype>

#include "liesym/errors.hpp"

namespace liesym {

void SymbolTable::declare(const Symbol& s) {
  if (entries_.count(s.name())) throw ValidationError("duplicate declaration of '" + s.name() + "'");
  entries_.emplace(s.name(), s);
}

void SymbolTable::declare(const FunctionSymbol& f) {
  if (entries_.count(f.name())) throw ValidationError("duplicate declaration of '" + f.name() + "'");
  entries_.emplace(f.name(), f);
}

void SymbolTable::declare_basis_vector(const std::string& coordinate, const Symbol& basis) {
  basis_.insert_or_assign(coordinate, basis);
}

std::optional<Symbol> SymbolTable::symbol(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end() || !std::holds_alternative<Symbol>(it->second)) return std::nullopt;
  return std::get<Symbol>(it->second);
}

std::optional<FunctionSymbol> SymbolTable::function(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end() || !std::holds_alternative<FunctionSymbol>(it->second)) return std::nullopt;
  return std::get<FunctionSymbol>(it->second);
}

std::optional<Symbol> SymbolTable::basis_vector(const std::string& coordinate) const {
  auto it = basis_.find(coordinate);
  if (it == basis_.end()) return std::nullopt;
  return it->second;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Token::Kind::Identifier, std::string(text.substr(i, j - i)), line, column});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Kind::Integer, std::string(text.substr(i, j - i)), line, column});
      advance(j - i);
      continue;
    }
    static const std::string_view punct = "+-*/^(),;{}=|[]";
    if (punct.find(c) == std::string_view::npos)
      throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    out.push_back({Token::Kind::Punct, std::string(1, c), line, column});
    advance(1);
  }
  out.push_back({Token::Kind::End, "", line, column});
  return out;
}

const Token& ExprParser::peek(std::size_t ahead) const {
  std::size_t k = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[k];
}

const Token& ExprParser::next() {
  const Token& t = peek();
  if (pos_ < tokens_.size() - 1) ++pos_;
  return t;
}

bool ExprParser::accept(const char* punct) {
  if (peek().kind == Token::Kind::Punct && peek().text == punct) {
    next();
    return true;
  }
  return false;
}

void ExprParser::expect(const char* punct) {
  if (!accept(punct)) {
    const Token& t = peek();
    std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(std::string("expected '") + punct + "' but found " + got, t.line, t.column);
  }
}

Expr ExprParser::parse_expression() {
  Expr e = parse_term();
  while (true) {
    if (accept("+")) {
      e += parse_term();
    } else if (accept("-")) {
      e -= parse_term();
    } else {
      return e;
    }
  }
}

Expr ExprParser::parse_term() {
  Expr e = parse_unary();
  while (true) {
    if (accept("*")) {
      e *= parse_unary();
    } else if (peek().kind == Token::Kind::Punct && peek().text == "/") {
      const Token& op = next();
      Expr d = parse_unary();
      if (d.is_zero())
        throw ParseError("division by an expression that normalizes to zero", op.line, op.column);
      e = e / d;
    } else {
      return e;
    }
  }
}

Expr ExprParser::parse_unary() {
  if (accept("-")) return -parse_unary();
  return parse_power();
}

Expr ExprParser::parse_power() {
  Expr base = parse_primary();
  if (peek().kind == Token::Kind::Punct && peek().text == "^") {
    const Token& op = next();
    Expr exponent = parse_unary();
    if (!exponent.is_constant() || exponent.constant_value().get_den() != 1)
      throw ParseError("exponent must be an integer", op.line, op.column);
    Integer n = exponent.constant_value().get_num();
    if (!n.fits_sint_p() || abs(n) > 1000000) throw ParseError("exponent out of range", op.line, op.column);
    if (base.is_zero() && n < 0)
      throw ParseError("division by an expression that normalizes to zero", op.line, op.column);
    return base.pow(static_cast<int>(n.get_si()));
  }
  return base;
}

Expr ExprParser::parse_primary() {
  const Token& t = next();
  if (t.kind == Token::Kind::Integer) return Expr(Rational(Integer(t.text)));
  if (t.kind == Token::Kind::Punct && t.text == "(") {
    Expr e = parse_expression();
    expect(")");
    return e;
  }
  if (t.kind != Token::Kind::Identifier) {
    std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("unexpected " + got, t.line, t.column);
  }
  // Basis vector d/d<coordinate>.
  if (t.text == "d" && !table_.contains("d") && peek().kind == Token::Kind::Punct && peek().text == "/" &&
      peek(1).kind == Token::Kind::Identifier && peek(1).text.size() > 1 && peek(1).text[0] == 'd') {
    if (auto b = table_.basis_vector(peek(1).text.substr(1))) {
      next();
      next();
      return Expr(*b);
    }
  }
  // Derivative of an application with respect to argument slots: D[0,2](F)(args).
  if (t.text == "D" && !table_.contains("D") && peek().kind == Token::Kind::Punct && peek().text == "[") {
    next();
    std::vector<int> slots;
    do {
      const Token& k = next();
      if (k.kind != Token::Kind::Integer) throw ParseError("expected a slot index", k.line, k.column);
      slots.push_back(std::stoi(k.text));
    } while (accept(","));
    expect("]");
    expect("(");
    const Token& name = next();
    auto f = name.kind == Token::Kind::Identifier ? table_.function(name.text) : std::nullopt;
    if (!f) throw ParseError("expected a declared function name", name.line, name.column);
    expect(")");
    expect("(");
    std::vector<Expr> args;
    do {
      args.push_back(parse_expression());
    } while (accept(","));
    expect(")");
    if (args.size() != f->arity())
      throw ParseError("function '" + f->name() + "' expects " + std::to_string(f->arity()) + " arguments", name.line,
                       name.column);
    for (int s : slots)
      if (s < 0 || static_cast<std::size_t>(s) >= f->arity())
        throw ParseError("slot index out of range", name.line, name.column);
    return Expr(Atom(*f, std::move(args), std::move(slots)));
  }
  if (auto s = table_.symbol(t.text)) return Expr(*s);
  if (auto f = table_.function(t.text)) {
    expect("(");
    std::vector<Expr> args;
    if (!accept(")")) {
      do {
        args.push_back(parse_expression());
      } while (accept(","));
      expect(")");
    }
    if (args.size() != f->arity())
      throw ParseError("function '" + f->name() + "' expects " + std::to_string(f->arity()) + " arguments", t.line,
                       t.column);
    return Expr::apply(*f, std::move(args));
  }
  if (t.text == "diff" && peek().kind == Token::Kind::Punct && peek().text == "(") {
    next();
    Expr e = parse_expression();
    while (accept(",")) {
      const Token& v = next();
      auto s = v.kind == Token::Kind::Identifier ? table_.symbol(v.text) : std::nullopt;
      if (!s) throw ParseError("diff expects declared variables after the expression", v.line, v.column);
      e = diff(e, *s);
    }
    expect(")");
    return e;
  }
  throw UndeclaredIdentifier(t.text, t.line, t.column);
}

Expr parse(std::string_view text, const SymbolTable& table) {
  auto tokens = tokenize(text);
  ExprParser p(tokens, table);
  Expr e = p.parse_expression();
  const Token& t = p.peek();
  if (t.kind != Token::Kind::End) throw ParseError("unexpected '" + t.text + "'", t.line, t.column);
  return e;
}

}  // namespace liesym
