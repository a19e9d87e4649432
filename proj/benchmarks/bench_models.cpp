#include <benchmark/benchmark.h>

#include "ybt/models.hpp"
#include "ybt/mpa.hpp"

namespace {

using namespace ybt;

AsepParams example(int L) {
  AsepParams p;
  p.L = L;
  p.q = 0.5;
  p.alpha = 0.6;
  p.beta = 0.4;
  p.gamma = 0.1;
  p.delta = 0.2;
  return p;
}

void BM_MpaStationary(benchmark::State& state) {
  const AsepParams p = example(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mpa_stationary_measure(p));
}
BENCHMARK(BM_MpaStationary)->DenseRange(2, 10, 2);

void BM_NullSpaceOracle(benchmark::State& state) {
  const AsepParams p = example(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stationary_distribution(asep_generator(p, true), 1e-13));
}
BENCHMARK(BM_NullSpaceOracle)->DenseRange(2, 10, 2);

void BM_TransitionProbability(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<int> y(n), x(n);
  for (int i = 0; i < n; ++i) {
    y[i] = i;
    x[i] = i + 1;
  }
  for (auto _ : state) benchmark::DoNotOptimize(tw_transition_probability(y, x, 0.5, 0.5));
}
BENCHMARK(BM_TransitionProbability)->DenseRange(1, 2);

void BM_CtmcOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<int> y(n), x(n);
  for (int i = 0; i < n; ++i) {
    y[i] = i;
    x[i] = i + 1;
  }
  for (auto _ : state) benchmark::DoNotOptimize(ctmc_oracle_probability(y, x, 0.5, 0.5));
}
BENCHMARK(BM_CtmcOracle)->DenseRange(1, 2);

}  // namespace
