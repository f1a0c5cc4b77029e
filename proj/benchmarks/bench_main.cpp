#include <benchmark/benchmark.h>

#include "resdirac/resdirac.hpp"

using namespace resdirac;

namespace {

Potential sample(int n) { return random_piecewise(1, {1.0, n, 8, 2.0}); }

void BM_JostFunction(benchmark::State& st) {
  const Potential q = sample(static_cast<int>(st.range(0)));
  double x = 0.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(jost_function(q, BoundaryParam(0.3), cplx(x, -1.0)));
    x += 0.01;
  }
}
BENCHMARK(BM_JostFunction)->RangeMultiplier(4)->Range(256, 4096);

void BM_KernelCharacteristics(benchmark::State& st) {
  const Potential q = sample(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(jost_kernel_characteristics(q, BoundaryParam(0.3)));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_KernelCharacteristics)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond)->Complexity();

void BM_RecoverPotential(benchmark::State& st) {
  const Potential q = sample(static_cast<int>(st.range(0)));
  const ScatteringRep S = forward_scattering(q, BoundaryParam(0.3));
  for (auto _ : st) benchmark::DoNotOptimize(recover_potential(S, q.samples.grid));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_RecoverPotential)->RangeMultiplier(2)->Range(256, 2048)->Unit(benchmark::kMillisecond)->Complexity();

void BM_FindResonances(benchmark::State& st) {
  const Evaluator f = jost_evaluator(constant_potential(1.0, 1024, 1.0), BoundaryParam(0.0));
  SearchRegion r;
  r.re_min = -30;
  r.re_max = 30;
  r.im_min = -6;
  r.im_max = 0;
  for (auto _ : st) benchmark::DoNotOptimize(find_resonances(f, r, 1e-10));
}
BENCHMARK(BM_FindResonances)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
