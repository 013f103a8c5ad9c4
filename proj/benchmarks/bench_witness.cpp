#include <benchmark/benchmark.h>

#include "qbell/witness.hpp"

namespace {

void BM_BlockPositivitySample(benchmark::State& state) {
    const auto trials = static_cast<std::size_t>(state.range(0));
    const auto w = qbell::witness::choi_grid(1, 1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(qbell::witness::block_positivity_sample(w, trials, 7));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_BlockPositivitySample)->Arg(1000)->Arg(10000);

void BM_AssembleMagicWitness(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    std::vector<double> lam(d * d, 1.0);
    lam[0] = static_cast<double>(d - 1);
    const auto w = qbell::witness::corollary2_bell_witness(d, 1, lam);
    for (auto _ : state) benchmark::DoNotOptimize(qbell::witness::assemble(w));
}
BENCHMARK(BM_AssembleMagicWitness)->DenseRange(2, 5);

}  // namespace
