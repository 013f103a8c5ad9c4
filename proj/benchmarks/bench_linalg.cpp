#include <benchmark/benchmark.h>

#include "qbell/linalg.hpp"
#include "qbell/random.hpp"

namespace {

void BM_HermitianEigenvalues(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    qbell::Rng rng(1);
    const qbell::ComplexMatrix a = qbell::random_hermitian(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(qbell::hermitian_eigenvalues(a));
}
BENCHMARK(BM_HermitianEigenvalues)->Arg(4)->Arg(9)->Arg(16)->Arg(25)->Arg(36)->Arg(64);

void BM_TraceNorm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    qbell::Rng rng(2);
    const qbell::ComplexMatrix a = qbell::random_gaussian_matrix(n, n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(qbell::trace_norm(a));
}
BENCHMARK(BM_TraceNorm)->Arg(9)->Arg(16)->Arg(36);

}  // namespace
