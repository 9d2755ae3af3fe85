#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "liesym/expr.hpp"

namespace liesym {

/// Names visible to the expression parser. Filled during a declaration phase, then read-only.
class SymbolTable {
 public:
  void declare(const Symbol& s);
  void declare(const FunctionSymbol& f);
  /// Registers `d/d<coordinate>` as the basis vector symbol `basis` (generator syntax).
  void declare_basis_vector(const std::string& coordinate, const Symbol& basis);

  std::optional<Symbol> symbol(const std::string& name) const;
  std::optional<FunctionSymbol> function(const std::string& name) const;
  std::optional<Symbol> basis_vector(const std::string& coordinate) const;
  bool contains(const std::string& name) const { return entries_.count(name) > 0; }

 private:
  std::map<std::string, std::variant<Symbol, FunctionSymbol>> entries_;
  std::map<std::string, Symbol> basis_;
};

struct Token {
  enum class Kind { Identifier, Integer, Punct, End };
  Kind kind;
  std::string text;
  int line;
  int column;
};

/// Splits text into identifiers, integer literals and single-character punctuation.
/// `#` starts a comment running to the end of the line.
std::vector<Token> tokenize(std::string_view text);

/// Recursive-descent expression parser over a token stream. Precedence from tightest:
/// `^` (right-associative, integer exponents), unary minus, `* /`, `+ -`.
class ExprParser {
 public:
  ExprParser(const std::vector<Token>& tokens, const SymbolTable& table, std::size_t pos = 0)
      : tokens_(tokens), table_(table), pos_(pos) {}

  Expr parse_expression();
  std::size_t position() const { return pos_; }
  const Token& peek(std::size_t ahead = 0) const;

 private:
  Expr parse_term();
  Expr parse_unary();
  Expr parse_power();
  Expr parse_primary();
  const Token& next();
  bool accept(const char* punct);
  void expect(const char* punct);

  const std::vector<Token>& tokens_;
  const SymbolTable& table_;
  std::size_t pos_;
};

/// Parses a complete expression; trailing input is a syntax error.
Expr parse(std::string_view text, const SymbolTable& table);

}  // namespace liesym
