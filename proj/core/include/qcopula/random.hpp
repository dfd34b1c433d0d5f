#pragma once

#include <cstdint>
#include <random>

namespace qcopula {

/// Mixes a master seed with a stream tag into an independent 64-bit seed.
/// Every component that needs randomness derives its own stream this way so
/// that adding draws in one place never shifts the draws of another.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Seeded pseudo-random source. The engine is std::mt19937_64; the draws are
/// implemented here rather than through <random> distributions so that the
/// sequences are identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in the open interval (0, 1).
    double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n);

    bool bit() { return (engine_() >> 63) != 0; }

    /// Standard normal via inverse-CDF of an open-interval uniform.
    double normal();

private:
    std::mt19937_64 engine_;
};

/// Fisher-Yates shuffle driven by Rng::below.
template <typename RandomIt>
void shuffle(RandomIt first, RandomIt last, Rng& rng) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
        const auto j = rng.below(i);
        using std::swap;
        swap(first[i - 1], first[j]);
    }
}

}  // namespace qcopula
