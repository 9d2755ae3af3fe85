#include "liesym/symbol.hpp"

#include <algorithm>

namespace liesym {

Symbol Symbol::time(std::string name) {
  return Symbol(std::make_shared<const Data>(Data{std::move(name), SymbolKind::Time, 0, {}}));
}

Symbol Symbol::independent(std::string name, int index) {
  return Symbol(std::make_shared<const Data>(Data{std::move(name), SymbolKind::Independent, index, {}}));
}

Symbol Symbol::dependent(std::string name, int index) {
  return Symbol(std::make_shared<const Data>(Data{std::move(name), SymbolKind::Dependent, index, {}}));
}

Symbol Symbol::jet(std::string name, int component, std::vector<int> directions) {
  std::sort(directions.begin(), directions.end());
  return Symbol(std::make_shared<const Data>(
      Data{std::move(name), SymbolKind::Jet, component, std::move(directions)}));
}

Symbol Symbol::parameter(std::string name) {
  return Symbol(std::make_shared<const Data>(Data{std::move(name), SymbolKind::Parameter, 0, {}}));
}

Symbol Symbol::unknown(std::string name) {
  return Symbol(std::make_shared<const Data>(Data{std::move(name), SymbolKind::Unknown, 0, {}}));
}

int Symbol::compare(const Symbol& a, const Symbol& b) {
  if (a.d_ == b.d_) return 0;
  if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  int c = a.name().compare(b.name());
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

FunctionSymbol::FunctionSymbol(std::string name, std::vector<Symbol> params)
    : d_(std::make_shared<const Data>(Data{std::move(name), std::move(params)})) {}

int FunctionSymbol::compare(const FunctionSymbol& a, const FunctionSymbol& b) {
  if (a.d_ == b.d_) return 0;
  int c = a.name().compare(b.name());
  if (c != 0) return c < 0 ? -1 : 1;
  if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
  return 0;
}

}  // namespace liesym
