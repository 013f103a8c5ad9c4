#include <benchmark/benchmark.h>

#include "qbell/belldiag.hpp"
#include "qbell/circulant.hpp"
#include "qbell/linalg.hpp"
#include "qbell/random.hpp"

namespace {

void BM_BrutePartialTransposePsd(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    qbell::Rng rng(3);
    const auto dense = qbell::circulant::assemble_dense(qbell::circulant::random_state(d, rng));
    for (auto _ : state) benchmark::DoNotOptimize(qbell::is_psd(qbell::brute_partial_transpose(dense, d)));
}
BENCHMARK(BM_BrutePartialTransposePsd)->DenseRange(2, 6);

void BM_TildeBlocksPpt(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    qbell::Rng rng(3);
    const auto cs = qbell::circulant::random_state(d, rng);
    for (auto _ : state) benchmark::DoNotOptimize(qbell::circulant::is_ppt(cs));
}
BENCHMARK(BM_TildeBlocksPpt)->DenseRange(2, 6);

void BM_BellRepresentativePpt(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    qbell::Rng rng(4);
    const auto bp = qbell::bell::random_probabilities(d, rng);
    for (auto _ : state) benchmark::DoNotOptimize(qbell::bell::is_ppt_bell(bp));
}
BENCHMARK(BM_BellRepresentativePpt)->DenseRange(2, 6);

void BM_CcnrClosedForm(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    qbell::Rng rng(5);
    const auto cs = qbell::circulant::random_state(d, rng);
    for (auto _ : state) benchmark::DoNotOptimize(qbell::circulant::ccnr_value(cs));
}
BENCHMARK(BM_CcnrClosedForm)->DenseRange(2, 6);

void BM_CcnrBrute(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    qbell::Rng rng(5);
    const auto dense = qbell::circulant::assemble_dense(qbell::circulant::random_state(d, rng));
    for (auto _ : state) benchmark::DoNotOptimize(qbell::trace_norm(qbell::brute_realign(dense, d)));
}
BENCHMARK(BM_CcnrBrute)->DenseRange(2, 6);

}  // namespace
