#pragma once

#include <compare>
#include <memory>
#include <string>
#include <vector>

namespace liesym {

/// Ordering rank of symbol kinds; canonical term order sorts by (rank, name).
enum class SymbolKind { Time = 0, Independent = 1, Dependent = 2, Jet = 3, Parameter = 4, Unknown = 5 };

/// An immutable named variable. Two symbols are the same variable iff kind and name agree.
class Symbol {
 public:
  static Symbol time(std::string name);
  static Symbol independent(std::string name, int index);
  static Symbol dependent(std::string name, int index);
  /// Jet coordinate u^component differentiated along `directions` (0 = time, i >= 1 = x^i).
  /// Directions are stored sorted, so mixed second derivatives exist once.
  static Symbol jet(std::string name, int component, std::vector<int> directions);
  static Symbol parameter(std::string name);
  static Symbol unknown(std::string name);

  const std::string& name() const { return d_->name; }
  SymbolKind kind() const { return d_->kind; }
  int index() const { return d_->index; }
  const std::vector<int>& directions() const { return d_->directions; }
  int jet_order() const { return static_cast<int>(d_->directions.size()); }

  bool is_coordinate() const {
    return kind() == SymbolKind::Time || kind() == SymbolKind::Independent ||
           kind() == SymbolKind::Dependent;
  }

  friend bool operator==(const Symbol& a, const Symbol& b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
    return compare(a, b) <=> 0;
  }
  static int compare(const Symbol& a, const Symbol& b);

 private:
  struct Data {
    std::string name;
    SymbolKind kind;
    int index;
    std::vector<int> directions;
  };
  explicit Symbol(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// Opaque function declared with formal parameter symbols, e.g. F(t, x, u).
/// The parameters fix the arity and are the variables a substitution body is written in.
class FunctionSymbol {
 public:
  FunctionSymbol(std::string name, std::vector<Symbol> params);

  const std::string& name() const { return d_->name; }
  std::size_t arity() const { return d_->params.size(); }
  const std::vector<Symbol>& params() const { return d_->params; }

  friend bool operator==(const FunctionSymbol& a, const FunctionSymbol& b) {
    return compare(a, b) == 0;
  }
  friend std::strong_ordering operator<=>(const FunctionSymbol& a, const FunctionSymbol& b) {
    return compare(a, b) <=> 0;
  }
  static int compare(const FunctionSymbol& a, const FunctionSymbol& b);

 private:
  struct Data {
    std::string name;
    std::vector<Symbol> params;
  };
  std::shared_ptr<const Data> d_;
};

}  // namespace liesym
