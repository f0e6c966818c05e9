#include "spinbell/threshold.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace spinbell;

namespace {

DensityOperator thermal_state() {
  static const DensityOperator rho =
      gibbs_state(canonical_eigensystem_n4(0.0), 0.4);
  return rho;
}

BellSettings some_settings() {
  BellSettings s;
  s.angles = {{0.1, 1.3}, {2.2, 0.7}, {0.4, 1.9}, {2.8, 0.2}};
  return s;
}

void BM_Eigendecompose(benchmark::State& state) {
  const auto h = build_field_hamiltonian(
      ChainSpec::with_default_couplings(static_cast<int>(state.range(0)), 0.3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigendecompose(h));
  }
}
BENCHMARK(BM_Eigendecompose)->Arg(4)->Arg(8)->Arg(10);

void BM_GibbsState(benchmark::State& state) {
  const auto es = canonical_eigensystem_n4(0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gibbs_state(es, 0.4));
  }
}
BENCHMARK(BM_GibbsState);

void BM_BellQuantity(benchmark::State& state) {
  const auto rho = thermal_state();
  const auto expr = zukowski_brukner_n4();
  const auto settings = some_settings();
  for (auto _ : state) {
    benchmark::DoNotOptimize(bell_quantity(rho, expr, settings));
  }
}
BENCHMARK(BM_BellQuantity);

void BM_BellGradient(benchmark::State& state) {
  const auto rho = thermal_state();
  const auto expr = zukowski_brukner_n4();
  const auto settings = some_settings();
  for (auto _ : state) {
    benchmark::DoNotOptimize(bell_gradient(rho, expr, settings));
  }
}
BENCHMARK(BM_BellGradient);

void BM_MaximizeBell(benchmark::State& state) {
  const auto rho = thermal_state();
  const auto expr = zukowski_brukner_n4();
  OptimizerConfig config;
  config.starts = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximize_bell(rho, expr, config));
  }
}
BENCHMARK(BM_MaximizeBell)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
