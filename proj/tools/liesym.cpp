#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "liesym/errors.hpp"
#include "liesym/report.hpp"

using namespace liesym;

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t monomial_cap() {
  const char* v = std::getenv("LIESYM_MAX_MONOMIALS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0') throw ValidationError(std::string("LIESYM_MAX_MONOMIALS is not a nonnegative integer: ") + v);
  return static_cast<std::size_t>(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie point symmetries of quasilinear parabolic systems"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<int> degree, t_degree;
  std::string json_path;
  bool quiet = false, timing = false;
  app.add_option("--degree", degree, "polynomial degree bound of the ansatz");
  app.add_option("--t-degree", t_degree, "degree bound in t of T(t) and the dependent-field coefficients");
  app.add_option("--json", json_path, "also write the report as JSON to this path");
  app.add_flag("--quiet", quiet, "suppress the text report");
  app.add_flag("--timing", timing, "print the elapsed time to stderr");

  std::string file, which, kind, generator;
  int brute_degree = 0;
  auto* sym = app.add_subcommand("symmetries", "assemble, verify and bracket the symmetry algebra");
  sym->add_option("file", file, "problem file")->required();
  auto* col = app.add_subcommand("collineations", "collineations of g or H");
  col->add_option("which", which, "g or H")->required();
  col->add_option("kind", kind, "KV, HV, CKV or AC")->required();
  col->add_option("file", file, "problem file")->required();
  auto* det = app.add_subcommand("determining", "print the determining equations");
  det->add_option("file", file, "problem file")->required();
  auto* ver = app.add_subcommand("verify", "check a generator");
  ver->add_option("generator", generator, "e.g. \"2*t*d/dx - x*u*d/du\"")->required();
  ver->add_option("file", file, "problem file")->required();
  auto* bru = app.add_subcommand("brute", "solve with a polynomial ansatz in every component");
  bru->add_option("degree", brute_degree, "total degree bound")->required();
  bru->add_option("file", file, "problem file")->required();
  auto* cmp = app.add_subcommand("compare", "compare the assembled algebra with the polynomial ansatz");
  cmp->add_option("file", file, "problem file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    auto text = read_file(file);
    if (!text) {
      std::cerr << "error: cannot read '" << file << "'\n";
      return 1;
    }
    Problem p = parse_problem(*text);
    SymmetryOptions opt = resolve_options(p, degree, t_degree, monomial_cap());
    Report r;
    if (*sym) {
      r = report_symmetries(p, opt);
    } else if (*col) {
      r = report_collineations(p, which, parse_collineation_kind(kind), opt);
    } else if (*det) {
      r = report_determining(p);
    } else if (*ver) {
      r = report_verify(p, generator);
    } else if (*bru) {
      if (brute_degree < 0) throw ValidationError("degree must be nonnegative");
      r = report_brute(p, brute_degree, opt);
    } else {
      r = report_compare(p, opt);
    }
    if (!quiet) std::cout << r.text;
    if (!json_path.empty()) {
      std::ofstream out(json_path);
      if (!out) throw Error("cannot write '" + json_path + "'");
      out << r.json.dump(2) << "\n";
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const ChartMismatch& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const CouplingViolation& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const SingularMetric& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const MalformedSystem& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const JetInGenerator& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const FNotZero& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  }
  if (timing) {
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    std::fprintf(stderr, "time: %.3f s\n", dt.count());
  }
  return 0;
}
