#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wbench/analysis.hpp"
#include "wbench/backend.hpp"
#include "wbench/hamiltonian.hpp"
#include "wbench/harness.hpp"
#include "wbench/mitigation.hpp"
#include "wbench/noise.hpp"

using namespace wbench;

namespace {

TemporalScenario device_like() {
  TemporalScenario s;
  s.readout = ReadoutNoise::uniform(3, 0.013);
  s.gate.one_qubit_error = 0.0004;
  s.gate.two_qubit_error = 0.008;
  return s;
}

void BM_RunCircuit(benchmark::State& state) {
  const auto circuit = w_state_circuit();
  for (auto _ : state) benchmark::DoNotOptimize(run_circuit(circuit));
}
BENCHMARK(BM_RunCircuit);

void BM_GateApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector sv(n);
  const Gate h = Gate::hadamard(1);
  const Gate cx = Gate::cnot(1, n);
  for (auto _ : state) {
    sv.apply(h);
    sv.apply(cx);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_GateApply)->Arg(3)->Arg(8)->Arg(12);

void BM_SampleShots(benchmark::State& state) {
  const auto sv = run_circuit(w_state_circuit());
  const std::vector<int> measured{1, 2, 3};
  RngStream stream(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_shots(sv, measured, 1024, stream));
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_SampleShots);

void BM_NoisyExecute(benchmark::State& state) {
  Circuit circuit = w_state_circuit();
  const auto noise = effective_noise_at(device_like(), 3, ExecutionContext{});
  RngStream stream(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(noisy_execute(circuit, 1024, noise, stream));
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_NoisyExecute);

void BM_Realization(benchmark::State& state) {
  const EmulatedBackend backend(device_like(), 3);
  const auto ham = fermionic_triangle();
  const auto prep = w_state_circuit();
  RngStream stream(3);
  std::uint64_t k = 0;
  for (auto _ : state) {
    RngStream child = stream.split(k++);
    benchmark::DoNotOptimize(run_realization(backend, ham, prep, 1024, ExecutionContext{}, child));
  }
}
BENCHMARK(BM_Realization);

void BM_MitigateHistogram(benchmark::State& state) {
  const auto cal = true_confusion_matrix(ReadoutNoise::uniform(3, 0.013), 3);
  RngStream stream(4);
  const std::vector<int> measured{1, 2, 3};
  const auto hist = sample_shots(run_circuit(w_state_circuit()), measured, 1024, stream);
  for (auto _ : state) benchmark::DoNotOptimize(mitigate_histogram(cal, hist));
}
BENCHMARK(BM_MitigateHistogram);

void BM_FitSinusoid(benchmark::State& state) {
  std::vector<double> t, y;
  for (int i = 0; i < 40; ++i) {
    t.push_back(14.5 * i);
    y.push_back(-1.82 + 0.07 * std::sin(2 * std::numbers::pi * t.back() / 121.8) +
                0.004 * std::cos(7.3 * i));
  }
  for (auto _ : state) benchmark::DoNotOptimize(fit_sinusoid(t, y));
}
BENCHMARK(BM_FitSinusoid);

}  // namespace

BENCHMARK_MAIN();
