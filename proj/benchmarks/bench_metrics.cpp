#include <benchmark/benchmark.h>

#include "uqeval/uqeval.hpp"

namespace {

uqeval::EvaluationSet make_set(std::size_t n, std::size_t m) {
  uqeval::SynthConfig config;
  config.n = n;
  config.m = m;
  config.seed = 42;
  config.member_jitter = 0.5;
  config.miscalibration = 1.3;
  config.shift_fraction = 0.2;
  config.shift_scale = 2.0;
  return uqeval::generate(config);
}

void BM_SynthGenerate(benchmark::State& state) {
  uqeval::SynthConfig config;
  config.n = static_cast<std::size_t>(state.range(0));
  config.m = 10;
  config.seed = 42;
  config.member_jitter = 0.5;
  for (auto _ : state) {
    auto set = uqeval::generate(config);
    benchmark::DoNotOptimize(set);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SynthGenerate)->Arg(10000)->Arg(100000);

void BM_AggregateAll(benchmark::State& state) {
  const auto set = make_set(static_cast<std::size_t>(state.range(0)), 10);
  for (auto _ : state) {
    auto agg = uqeval::aggregate_all(set);
    benchmark::DoNotOptimize(agg);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AggregateAll)->Arg(10000)->Arg(100000);

void BM_EpklVector(benchmark::State& state) {
  const auto set = make_set(10000, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto unc = uqeval::uncertainty_vector(set, uqeval::Measure::epkl);
    benchmark::DoNotOptimize(unc);
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_EpklVector)->Arg(2)->Arg(10)->Arg(50);

void BM_CalibrationReport(benchmark::State& state) {
  const auto set = make_set(static_cast<std::size_t>(state.range(0)), 5);
  const auto variances = uqeval::uncertainty_vector(set, uqeval::Measure::tvar);
  for (auto _ : state) {
    auto report = uqeval::calibration_report(set, variances, 20);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CalibrationReport)->Arg(10000)->Arg(100000)->Arg(1000000);

void BM_MseRetention(benchmark::State& state) {
  const auto set = make_set(static_cast<std::size_t>(state.range(0)), 5);
  const auto unc = uqeval::uncertainty_vector(set, uqeval::Measure::tvar);
  for (auto _ : state) {
    auto curve = uqeval::mse_retention_curve(set, unc, 101);
    benchmark::DoNotOptimize(curve);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MseRetention)->Arg(10000)->Arg(100000)->Arg(1000000);

void BM_F1Retention(benchmark::State& state) {
  const auto set = make_set(static_cast<std::size_t>(state.range(0)), 5);
  const auto unc = uqeval::llfu_vector(set);
  for (auto _ : state) {
    auto curve = uqeval::f1_retention_curve(set, unc, 1.0, 101);
    benchmark::DoNotOptimize(curve);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_F1Retention)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
