#include <random>

#include <benchmark/benchmark.h>

#include "orbifunctor/exact/smith.hpp"

using namespace orbifunctor;

namespace {

IntMatrix random_matrix(std::size_t n, long bound, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> entry(-bound, bound);
    IntMatrix m(n, n + n / 2);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) = entry(rng);
    return m;
}

void BM_SmithParallel(benchmark::State& state)
{
    const IntMatrix a = random_matrix(static_cast<std::size_t>(state.range(0)), 20, 7);
    SmithOptions opts;
    opts.parallel = true;
    for (auto _ : state)
        benchmark::DoNotOptimize(smith_normal_form(a, opts));
}

void BM_SmithSerial(benchmark::State& state)
{
    const IntMatrix a = random_matrix(static_cast<std::size_t>(state.range(0)), 20, 7);
    SmithOptions opts;
    opts.parallel = false;
    for (auto _ : state)
        benchmark::DoNotOptimize(smith_normal_form(a, opts));
}

void BM_SmithReference(benchmark::State& state)
{
    const IntMatrix a = random_matrix(static_cast<std::size_t>(state.range(0)), 20, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(smith_normal_form_reference(a));
}

} // namespace

BENCHMARK(BM_SmithParallel)->DenseRange(8, 32, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SmithSerial)->DenseRange(8, 32, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SmithReference)->DenseRange(8, 32, 8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
