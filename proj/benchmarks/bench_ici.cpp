#include <benchmark/benchmark.h>

#include "ici/basins.hpp"
#include "ici/compiled.hpp"
#include "ici/expr.hpp"
#include "ici/kernel.hpp"
#include "ici/solve.hpp"

namespace {

using namespace ici;

void BM_IciStepDouble(benchmark::State& state) {
  const PointSample<double> prev{2.0, -0.05, 0.19};
  const PointSample<double> cur{2.09, 0.003, 11.1};
  for (auto _ : state) benchmark::DoNotOptimize(ici_step(prev, cur));
}
BENCHMARK(BM_IciStepDouble);

template <StepKind kind>
void BM_StepMP(benchmark::State& state) {
  const Precision p(static_cast<int>(state.range(0)));
  const PointSample<MPReal> prev{MPReal(2L, p), MPReal("-0.05", p), MPReal("0.19", p)};
  const PointSample<MPReal> cur{MPReal("2.09", p), MPReal("0.003", p), MPReal("11.1", p)};
  for (auto _ : state) {
    if constexpr (kind == StepKind::ici) {
      benchmark::DoNotOptimize(ici_step(prev, cur));
    } else if constexpr (kind == StepKind::ici_averaged) {
      benchmark::DoNotOptimize(ici_step_averaged(prev, cur));
    } else {
      benchmark::DoNotOptimize(newton_step(cur));
    }
  }
}
BENCHMARK(BM_StepMP<StepKind::newton>)->Arg(50)->Arg(1000);
BENCHMARK(BM_StepMP<StepKind::ici>)->Arg(50)->Arg(1000);
BENCHMARK(BM_StepMP<StepKind::ici_averaged>)->Arg(50)->Arg(1000);

// Cost of one f and f' evaluation, which dominates a solve at high precision.
void BM_EvaluateExpExample(benchmark::State& state) {
  const Precision p(static_cast<int>(state.range(0)));
  const Expr f = parse("(x^2+x)*exp(-x)-1/3");
  const CompiledExpr fc(f, p), fpc(differentiate(f, "x"), p);
  const MPReal x("4.17", p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fc(x));
    benchmark::DoNotOptimize(fpc(x));
  }
}
BENCHMARK(BM_EvaluateExpExample)->Arg(50)->Arg(1000);

void BM_SolveExpExample(benchmark::State& state) {
  const Precision p(1000);
  SolveConfig cfg(p);
  cfg.max_iter = 8;
  cfg.method = static_cast<Method>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_expr("(x^2+x)*exp(-x)-1/3", MPReal(2L, p), cfg));
}
BENCHMARK(BM_SolveExpExample)->Arg(static_cast<int>(Method::newton))->Arg(static_cast<int>(Method::ici))
    ->Unit(benchmark::kMillisecond);

void BM_RenderCubeRoots(benchmark::State& state) {
  BasinSpec spec;
  spec.function = "z^3-1";
  spec.width = spec.height = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(render(spec));
  state.SetItemsProcessed(state.iterations() * spec.width * spec.height);
}
BENCHMARK(BM_RenderCubeRoots)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
