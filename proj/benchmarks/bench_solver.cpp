#include <benchmark/benchmark.h>

#include "helix/eig.hpp"
#include "helix/model.hpp"
#include "helix/solve.hpp"

using namespace helix;

namespace {

PhysicalParams gauge_on() {
  PhysicalParams p;
  p.B0 = 0.5;
  p.PhiB = 0.5;
  return p;
}

void BM_SturmCount(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RadialGrid grid(1e-3, 20.0, n);
  const auto p = gauge_on();
  const auto op = assemble(grid, [&](double r) { return u_of_r(r, p, 1, Free{}); });
  const double mid = 0.5 * (op.diag.front() + op.diag.back());
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_below(op, mid));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SturmCount)->Arg(4000)->Arg(24000)->Arg(96000);

void BM_LowestEigenpairs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RadialGrid grid(1e-3, 20.0, n);
  const auto p = gauge_on();
  const auto op = assemble(grid, [&](double r) { return u_of_r(r, p, 1, Free{}); });
  for (auto _ : state) {
    benchmark::DoNotOptimize(lowest_eigenpairs(op, EigenRequest{3, 1e-10, 1e-8}));
  }
}
BENCHMARK(BM_LowestEigenpairs)->Arg(4000)->Arg(24000);

void BM_SolvePoint(benchmark::State& state) {
  ProblemSpec spec;
  spec.params = gauge_on();
  spec.m = 1;
  spec.model = Cornell{1.0, 0.02};
  spec.grid = RadialGrid(1e-3, 20.0, static_cast<int>(state.range(0)));
  spec.levels = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_bound_states(spec));
  }
}
BENCHMARK(BM_SolvePoint)->Arg(4000)->Arg(24000);

}  // namespace

BENCHMARK_MAIN();
