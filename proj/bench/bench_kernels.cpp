#include <benchmark/benchmark.h>

#include <dwet/angle.hpp>
#include <dwet/channel.hpp>
#include <dwet/parallel.hpp>
#include <dwet/power.hpp>
#include <dwet/protocol.hpp>
#include <dwet/rng.hpp>

#include <random>
#include <vector>

namespace {

using namespace dwet;

Scenario bench_scenario(int m) {
  Rng rng = make_stream(42, static_cast<std::uint64_t>(m));
  ScenarioDistribution dist;
  dist.num_transmitters = m;
  return generate_scenario(dist, rng).scenario;
}

std::vector<double> random_phases(std::size_t count) {
  Rng rng = make_stream(43, count);
  std::uniform_real_distribution<double> u(-pi, pi);
  std::vector<double> v(count);
  for (auto& x : v) x = u(rng);
  return v;
}

template <bool Parallel>
void BM_PowerBatch(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const std::size_t rows = 4096;
  const Scenario s = bench_scenario(m);
  const auto phases = random_phases(rows * static_cast<std::size_t>(m));
  std::vector<double> out(rows);
  for (auto _ : state) {
    if constexpr (Parallel)
      harvested_power_batch(s, phases, out);
    else
      harvested_power_batch_serial(s, phases, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(rows));
}

template <bool Parallel>
void BM_ProtocolTrials(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int trials = 256;
  ScenarioDistribution dist;
  dist.num_transmitters = m;
  auto trial = [&](int t) {
    Rng rng = make_stream(44, static_cast<std::uint64_t>(t));
    const Scenario s = generate_scenario(dist, rng).scenario;
    MeasurementModel exact;
    return run_protocol(s, ProtocolOptions{}, exact).eta;
  };
  for (auto _ : state) {
    auto etas = Parallel ? map_trials(trials, trial) : map_trials_serial(trials, trial);
    benchmark::DoNotOptimize(etas.data());
  }
  state.SetItemsProcessed(state.iterations() * trials);
}

}  // namespace

BENCHMARK(BM_PowerBatch<false>)->Name("power_batch/serial")->Arg(5)->Arg(32)->Arg(128);
BENCHMARK(BM_PowerBatch<true>)->Name("power_batch/openmp")->Arg(5)->Arg(32)->Arg(128)->UseRealTime();
BENCHMARK(BM_ProtocolTrials<false>)->Name("protocol_trials/serial")->Arg(5)->Arg(10);
BENCHMARK(BM_ProtocolTrials<true>)->Name("protocol_trials/openmp")->Arg(5)->Arg(10)->UseRealTime();

BENCHMARK_MAIN();
