#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "liesym/problem.hpp"

namespace liesym {

/// Text and JSON renderings of one command's result. Both are deterministic.
struct Report {
  std::string text;
  nlohmann::json json;
};

/// Problem defaults overridden by explicit flags; the default degree is 2 for both bounds.
SymmetryOptions resolve_options(const Problem& p, std::optional<int> degree, std::optional<int> t_degree,
                                std::size_t max_monomials = 0);

Report report_symmetries(const Problem& p, const SymmetryOptions& options);
Report report_collineations(const Problem& p, const std::string& which, CollineationKind kind,
                            const SymmetryOptions& options);
Report report_determining(const Problem& p);
Report report_verify(const Problem& p, const std::string& generator);
Report report_brute(const Problem& p, int degree, const SymmetryOptions& options);
Report report_compare(const Problem& p, const SymmetryOptions& options);

}  // namespace liesym
