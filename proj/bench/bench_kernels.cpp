#include <benchmark/benchmark.h>

#include "fognet/analysis.hpp"
#include "fognet/parallel.hpp"
#include "fognet/scenario.hpp"

using namespace fognet;

namespace {

ScenarioConfig bench_config() {
  ScenarioConfig cfg;
  cfg.local_cloud.cloud_distance = 140.0;
  cfg.replications = 64;
  return cfg;
}

void BM_ReplicationsSerial(benchmark::State& state) {
  const auto cfg = bench_config();
  const auto p1 = phase1(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(run_replications_serial(cfg, p1));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.replications));
}

void BM_ReplicationsParallel(benchmark::State& state) {
  const auto cfg = bench_config();
  const auto p1 = phase1(cfg);
  ThreadCountScope threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_replications(cfg, p1));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.replications));
}

SelectionSetting event_setting() {
  ScenarioConfig cfg;
  cfg.local_cloud.cloud_distance = 100.0;
  SelectionSetting s{cfg.ideal, phase1(cfg), cfg.channel, cfg.scheme};
  s.p1.j_hat = 6;
  s.p1.lambda_hat = 1.4;
  return s;
}

constexpr std::uint64_t kSamples = 1 << 20;

void BM_EventsSerial(benchmark::State& state) {
  const auto s = event_setting();
  for (auto _ : state) benchmark::DoNotOptimize(estimate_selection_events_serial(2.08, s, NodeSampler{}, kSamples, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(kSamples));
}

void BM_EventsParallel(benchmark::State& state) {
  const auto s = event_setting();
  ThreadCountScope threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_selection_events(2.08, s, NodeSampler{}, kSamples, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(kSamples));
}

}  // namespace

BENCHMARK(BM_ReplicationsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReplicationsParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EventsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EventsParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
