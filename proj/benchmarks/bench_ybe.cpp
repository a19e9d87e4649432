#include <benchmark/benchmark.h>

#include "ybt/uqsl2.hpp"
#include "ybt/ybe.hpp"

namespace {

using namespace ybt;

void BM_BraidedYbe(benchmark::State& state) {
  const Operator r = r_alpha_beta(0.3, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_braided_ybe(r));
}
BENCHMARK(BM_BraidedYbe);

void BM_SpectralYbeAsep(benchmark::State& state) {
  const SpectralRFamily fam = asep_family(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(verify_spectral_ybe(fam, 0.3, 0.7));
}
BENCHMARK(BM_SpectralYbeAsep);

void BM_UniversalR(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const RepM r = rep(m, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(universal_r(r, r));
}
BENCHMARK(BM_UniversalR)->DenseRange(1, 6);

}  // namespace

BENCHMARK_MAIN();
