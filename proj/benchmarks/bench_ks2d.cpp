#include <benchmark/benchmark.h>

#include "qcopula/eval.hpp"
#include "qcopula/random.hpp"

using namespace qcopula;

static Matrix uniform_points(std::size_t n, Rng& rng) {
    Matrix m(n, 2);
    for (auto& v : m.data()) v = rng.uniform();
    return m;
}

static void BM_Ks2dStatistic(benchmark::State& state) {
    Rng rng(1);
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = uniform_points(n, rng), b = uniform_points(n, rng);
    for (auto _ : state) benchmark::DoNotOptimize(ks2d_statistic(a, b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Ks2dStatistic)->RangeMultiplier(4)->Range(128, 8192)->Complexity(benchmark::oNLogN);

static void BM_Ks2dPermutationTest(benchmark::State& state) {
    Rng rng(2);
    const Matrix a = uniform_points(2000, rng), b = uniform_points(2000, rng);
    for (auto _ : state) benchmark::DoNotOptimize(ks2d_test(a, b, 100, 7));
}
BENCHMARK(BM_Ks2dPermutationTest)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
