#include <benchmark/benchmark.h>

#include <cmath>
#include <limits>

#include "lmsr/dimension.hpp"
#include "lmsr/enumeration.hpp"
#include "lmsr/eval.hpp"
#include "lmsr/fit.hpp"
#include "lmsr/registry.hpp"
#include "lmsr/subsolver.hpp"

using namespace lmsr;

static void BM_EvalGentree(benchmark::State& state) {
  const Gentree t = Gentree::parse("(/ L (sqrt (+ L L)))");
  const ParamAssignment p{{LMonomial{{1, 0, 0}, true, 2.0}, LMonomial{{0, 0, 0}, false, 1.0},
                           LMonomial{{-2, 2, -2}, true, 1.5}}};
  const std::vector<double> x{0.3, 1.2, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(eval_gentree(t, p, x));
}
BENCHMARK(BM_EvalGentree);

static void BM_EnumerateCatalog(benchmark::State& state) {
  const auto opt = paper_counts_preset(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_gentrees(opt).size());
}
BENCHMARK(BM_EnumerateCatalog)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_FeasiblePowerSets(benchmark::State& state) {
  const ProblemSpec& p = find_problem("I.34.10");
  const Gentree t = Gentree::parse("(/ L (+ L L))");
  const auto sys = tree_unit_constraints(t, {true, false, false}, p.units(), true);
  for (auto _ : state) benchmark::DoNotOptimize(feasible_power_sets(sys, 2, 6).size());
}
BENCHMARK(BM_FeasiblePowerSets)->Unit(benchmark::kMillisecond);

static void BM_FitLinear(benchmark::State& state) {
  const ProblemSpec& p = find_problem("I.12.2");
  const Dataset d = p.generate(10, 1);
  const auto model = *p.expected_model();
  std::vector<std::vector<int>> powers;
  std::vector<bool> gated;
  for (const auto& l : model.params.leaves) {
    powers.push_back(l.powers);
    gated.push_back(l.gated);
  }
  const SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(fit_constants(model.tree, powers, gated, d, cfg).sse);
}
BENCHMARK(BM_FitLinear);

static void BM_FitGrid(benchmark::State& state) {
  std::vector<double> x;
  std::vector<double> y;
  for (int i = 1; i <= 10; ++i) {
    x.push_back(i);
    y.push_back(std::sqrt(3.0 + i));
  }
  const Dataset d({"x"}, x, y);
  const Gentree t = Gentree::parse("(sqrt (+ L L))");
  const std::vector<std::vector<int>> powers{{0}, {1}};
  const SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(fit_constants(t, powers, {true, false}, d, cfg).sse);
}
BENCHMARK(BM_FitGrid)->Unit(benchmark::kMicrosecond);

static void BM_SolveSingleLeaf(benchmark::State& state) {
  const ProblemSpec& p = find_problem("II.38.3");
  const Dataset d = p.generate(10, 1);
  const SolverConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        solve_gentree(Gentree(), d, cfg, std::numeric_limits<double>::infinity(), 60).state);
  }
}
BENCHMARK(BM_SolveSingleLeaf)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
