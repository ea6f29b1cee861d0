#include <benchmark/benchmark.h>
#include <omp.h>

#include "roofs/measures.hpp"
#include "roofs/random.hpp"
#include "roofs/roof_solver.hpp"

using namespace roofs;

namespace {

SolverConfig config(int restarts) {
  SolverConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = 3;
  return cfg;
}

const RoofObjective& eof_objective() {
  static const RoofObjective g = output_entropy_objective(QubitOutputChannel::partial_trace(2));
  return g;
}

void BM_SerialRoof(benchmark::State& state) {
  const DensityOperator rho = random_density(4, 3, 11);
  const SolverConfig cfg = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(serial::minimize_roof(eof_objective(), rho, cfg).value);
  state.counters["restarts"] = static_cast<double>(cfg.restarts);
}

void BM_ParallelRoof(benchmark::State& state) {
  const DensityOperator rho = random_density(4, 3, 11);
  const SolverConfig cfg = config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(minimize_roof(eof_objective(), rho, cfg).value);
  state.counters["restarts"] = static_cast<double>(cfg.restarts);
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_SerialRoof)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelRoof)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
