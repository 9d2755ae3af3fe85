// Serial versus OpenMP column assembly on the shipped problems.

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "liesym/report.hpp"

using namespace liesym;

namespace {

Problem load(const std::string& name) {
  std::ifstream in(std::string(LIESYM_DATA_DIR) + "/" + name);
  std::ostringstream s;
  s << in.rdbuf();
  return parse_problem(s.str());
}

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_BruteForceHeat(benchmark::State& state) {
  Problem p = load("heat.lsy");
  AssemblyOptions a{mode(state), 0};
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_symmetries(p.system, 4, a));
}

void BM_AssembleSpheres(benchmark::State& state) {
  Problem p = load("sphere.lsy");
  SymmetryOptions opt = resolve_options(p, std::nullopt, std::nullopt);
  opt.assembly.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_from_collineations(p.system, opt));
}

void BM_EvaluateColumns(benchmark::State& state) {
  Problem p = load("flat2.lsy");
  SymmetryCondition condition(p.system);
  auto f = [&](std::size_t k) {
    Expr c = Expr(p.system.t).pow(static_cast<int>(k % 5)) * Expr(p.system.x.coords[k % 2]);
    return condition.residual(Generator{c, {c, Expr()}, {Expr(), c}});
  };
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_columns(64, f, mode(state)));
}

}  // namespace

BENCHMARK(BM_BruteForceHeat)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleSpheres)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(BM_EvaluateColumns)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
