#include <benchmark/benchmark.h>

#include "qcopula/qopula.hpp"
#include "qcopula/random.hpp"

using namespace qcopula;

static void BM_SampleCopulaPoints(benchmark::State& state) {
    const QopulaSpec spec{2, 3, 1, 20};
    Rng rng(1);
    const auto theta = random_parameters(spec, rng);
    const NoiseConfig noise{state.range(0) / 100.0};
    for (auto _ : state) benchmark::DoNotOptimize(sample_copula_points(spec, theta, 2000, rng, noise));
}
// argument is the depolarizing probability in percent
BENCHMARK(BM_SampleCopulaPoints)->Arg(0)->Arg(2)->Arg(50);
BENCHMARK_MAIN();
