#include <benchmark/benchmark.h>

#include "qdcav/cavity.h"
#include "qdcav/fidelity.h"
#include "qdcav/protocols.h"

namespace {

using namespace qdcav;

void BM_ResonantCoefficients(benchmark::State &state) {
  double g = 2.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(resonant_coefficients(g, 0.5, 0.1));
  }
}
BENCHMARK(BM_ResonantCoefficients);

void BM_DetunedCoefficients(benchmark::State &state) {
  CavityParams p{2.5, 1.0, 0.5, 0.1, 0.3, -0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(scatter_coefficients(p));
  }
}
BENCHMARK(BM_DetunedCoefficients);

void BM_RunCnot(benchmark::State &state) {
  const ScatterMode mode = ScatterMode::realistic(2.5, 0.5, 0.1);
  const CnotInput in = CnotInput::from_angles(0.3, 1.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_cnot(in, mode));
  }
}
BENCHMARK(BM_RunCnot);

void BM_RunSwap(benchmark::State &state) {
  const ScatterMode mode = ScatterMode::realistic(2.5, 0.5, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_entanglement_swap(mode));
  }
}
BENCHMARK(BM_RunSwap);

void BM_AverageCnotFidelity(benchmark::State &state) {
  const ScatterMode mode = ScatterMode::realistic(2.5, 0.5, 0.1);
  const int grid_n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(average_cnot_fidelity(mode, Normalization::conditioned, grid_n));
  }
}
BENCHMARK(BM_AverageCnotFidelity)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State &state) {
  SweepSpec spec;
  spec.quantity = SweepQuantity::swap;
  spec.resolution = 21;
  spec.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(spec));
  }
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
