#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "liesym/evolution.hpp"
#include "liesym/parser.hpp"
#include "liesym/prolongation.hpp"
#include "liesym/symmetry.hpp"

namespace liesym {

/// A parsed `.lsy` problem:
///
///   time t;
///   indep x y;
///   dep u v;
///   metric g { xx = 1; xy = 0; yy = 1; }
///   metric H { uu = 1; vv = 1; }          # or: connection H { u_uv = ...; }
///   F { u = 0; v = 0; }
///   options { degree = 2; t_degree = 2; }
///
/// Component keys concatenate coordinate names; omitted components are zero.
struct Problem {
  BimetricSystem system;
  /// Coordinates and their d/d<name> basis vectors.
  SymbolTable table;
  std::optional<int> degree;
  std::optional<int> t_degree;
};

/// Throws ParseError for malformed text and the engine's validation errors for
/// inconsistent geometry.
Problem parse_problem(std::string_view text);

/// Parses "c1*d/dt + c2*d/dx + ..." over the problem's coordinates. Throws ParseError unless
/// the expression is linear and homogeneous in the basis vectors.
Generator parse_generator(std::string_view text, const Problem& p);

/// Problem text reproducing `p`, parseable by parse_problem.
std::string echo_problem(const Problem& p);

}  // namespace liesym
