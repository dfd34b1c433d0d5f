#include <benchmark/benchmark.h>

#include "qcopula/qopula.hpp"
#include "qcopula/random.hpp"
#include "qcopula/statevec.hpp"

using namespace qcopula;

static void BM_ExactDistribution(benchmark::State& state) {
    const QopulaSpec spec{2, static_cast<std::size_t>(state.range(0)), 1, 0};
    Rng rng(1);
    const auto theta = random_parameters(spec, rng);
    for (auto _ : state) benchmark::DoNotOptimize(exact_distribution(spec, theta));
}
BENCHMARK(BM_ExactDistribution)->DenseRange(2, 6);

static void BM_NoisyTrajectory(benchmark::State& state) {
    const QopulaSpec spec{2, 3, 1, 0};
    Rng rng(2);
    const auto circuit = assemble(spec, random_parameters(spec, rng));
    const NoiseConfig noise{0.02};
    for (auto _ : state) benchmark::DoNotOptimize(apply_noisy_circuit(circuit, noise, rng));
}
BENCHMARK(BM_NoisyTrajectory);

static void BM_DensityOracle(benchmark::State& state) {
    Circuit c(static_cast<std::size_t>(state.range(0)));
    for (std::size_t q = 0; q + 1 < c.num_qubits(); ++q) c.add(Gate::h(q)).add(Gate::cnot(q, q + 1));
    for (auto _ : state) benchmark::DoNotOptimize(density_oracle_probabilities(c, {0.1}));
}
BENCHMARK(BM_DensityOracle)->DenseRange(2, 5);
BENCHMARK_MAIN();
