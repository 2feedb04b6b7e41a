// SPDX-License-Identifier: Apache-2.0
//
// OpenMP kernels against their serial references. With one hardware thread the
// pairs should take about the same time; the gap shows the parallel overhead.

#include <benchmark/benchmark.h>

#include "edusat/batch.hpp"
#include "edusat/truth_table.hpp"

namespace {

using namespace edusat;

constexpr Engine kEngines[] = {Engine::Naive, Engine::Dpll, Engine::Robdd};

std::vector<Formula> batch(std::size_t count) {
  GenConfig cfg;
  cfg.num_vars = 5;
  cfg.depth = 8;
  cfg.seed = 1;
  return generate_batch(cfg, count);
}

// A wide formula so that the table has 2^vars rows.
Formula wide(std::uint32_t vars) {
  GenConfig cfg;
  cfg.num_vars = vars;
  cfg.depth = 10;
  cfg.seed = 3;
  return gen_bool_tree(cfg);
}

void BM_BatchSerial(benchmark::State& state) {
  const auto formulas = batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_batch_serial(formulas, SolveMode::Single, kEngines));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BatchParallel(benchmark::State& state) {
  const auto formulas = batch(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_batch(formulas, SolveMode::Single, kEngines));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TruthTableSerial(benchmark::State& state) {
  const Formula f = wide(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(truth_table_serial(f));
}

void BM_TruthTableParallel(benchmark::State& state) {
  const Formula f = wide(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(truth_table(f));
}

}  // namespace

BENCHMARK(BM_BatchSerial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TruthTableSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TruthTableParallel)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
