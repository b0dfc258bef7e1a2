#include <benchmark/benchmark.h>

#include "uvarov/kernels.hpp"
#include "uvarov/simplex_mass.hpp"
#include "uvarov/uvarov_engine.hpp"

using namespace uvarov;

namespace {

Point interior(int d) { return Point::Constant(d, 0.8 / (d + 1)); }

void BM_BasisEvalUpto(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0)), n = static_cast<int>(state.range(1));
  const SimplexJacobiBasis b(SimplexJacobiParams::symmetric(d, 0.5), n);
  const Point x = interior(d);
  for (auto _ : state) benchmark::DoNotOptimize(b.eval_upto(n, x));
}
BENCHMARK(BM_BasisEvalUpto)->Args({2, 20})->Args({2, 100})->Args({3, 20});

void BM_BasisSumKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SimplexJacobiBasis b(SimplexJacobiParams::symmetric(2, 0.0), n);
  const SimplexKernels k(b);
  const Point x = interior(2);
  for (auto _ : state) benchmark::DoNotOptimize(k.sum(n, x, x).value);
}
BENCHMARK(BM_BasisSumKernel)->Arg(25)->Arg(100)->Arg(200);

void BM_EngineExtend(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SimplexJacobiBasis b(SimplexJacobiParams::symmetric(2, 0.5), n);
  const MassSpec m = VertexMassModel(2, 0.5, 1.0).mass_spec();
  for (auto _ : state) {
    UvarovEngine e(b, m);
    e.extend_to(n);
    benchmark::DoNotOptimize(e.built_degree());
  }
}
BENCHMARK(BM_EngineExtend)->Arg(10)->Arg(40);

void BM_ModifiedKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SimplexJacobiBasis b(SimplexJacobiParams::symmetric(2, 0.5), n);
  UvarovEngine e(b, VertexMassModel(2, 0.5, 1.0).mass_spec());
  e.extend_to(n);
  const Point x = interior(2);
  for (auto _ : state) benchmark::DoNotOptimize(e.sum_kernel(n, x, x));
}
BENCHMARK(BM_ModifiedKernel)->Arg(10)->Arg(40);

void BM_VertexMassClosedForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SimplexJacobiBasis b(SimplexJacobiParams::symmetric(2, 0.0), n);
  const SimplexKernels k(b);
  const VertexMassKernels vm(k, VertexMassModel(2, 0.0, 1.0));
  const Point x = interior(2);
  for (auto _ : state) benchmark::DoNotOptimize(vm.kernel(n, x, x));
}
BENCHMARK(BM_VertexMassClosedForm)->Arg(40)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
