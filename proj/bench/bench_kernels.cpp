// Serial reference against OpenMP for the two bulk kernels.
#include <benchmark/benchmark.h>

#include "banklaine/dilatation.hpp"
#include "banklaine/oscillation_verify.hpp"

using namespace bl;

namespace {

const GluedMapCtx& shared_ctx() {
  static const GluedMapCtx ctx(make_plan(2.0, 1.0, 40));
  return ctx;
}

void BM_DilatationIntegral(benchmark::State& state) {
  const ExecPolicy policy = state.range(0) ? ExecPolicy::Parallel : ExecPolicy::Serial;
  const GluedMapCtx& ctx = shared_ctx();
  for (auto _ : state) benchmark::DoNotOptimize(dilatation_integral(ctx, 16, 32, 32, 128, policy).value);
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_ZeroCatalog(benchmark::State& state) {
  const ExecPolicy policy = state.range(0) ? ExecPolicy::Parallel : ExecPolicy::Serial;
  for (auto _ : state) {
    // a fresh context so cached roots and shifts are rebuilt each time
    const GluedMapCtx ctx(make_plan(2.0, 1.0, 25));
    const ZeroCatalog cat(ctx, policy);
    benchmark::DoNotOptimize(cat.radii(CountKind::ZerosG).size());
  }
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_DilatationIntegral)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZeroCatalog)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
