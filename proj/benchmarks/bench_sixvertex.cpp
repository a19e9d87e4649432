#include <benchmark/benchmark.h>

#include "ybt/sixvertex.hpp"

namespace {

using namespace ybt;

void BM_FusedRecurrence(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fused_weights_recurrence(l, l, 0.4, 0.5));
}
BENCHMARK(BM_FusedRecurrence)->DenseRange(1, 4);

void BM_FusedClosedForm(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fused_weights_closed_form(l, l, 0.4, 0.5));
}
BENCHMARK(BM_FusedClosedForm)->DenseRange(1, 4);

void BM_FusedSpectralYbe(benchmark::State& state) {
  const SpectralRFamily fam = fused_family(2, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(verify_spectral_ybe(fam, 0.3, 0.7));
}
BENCHMARK(BM_FusedSpectralYbe);

void BM_SampleStepLattice(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const VertexWeights w = six_vertex_weights(0.35, 0.8);
  const LatticeBoundary b = step_boundary(n, n);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_lattice(w, n, n, b, ++seed));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_SampleStepLattice)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace
