#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qcopula/losses.hpp"
#include "qcopula/matrix.hpp"

namespace qcopula {

struct Ks2dResult {
    double statistic = 0.0;  // D_KS in [0, 1]
    double p_value = 1.0;    // in [0, 1]
    std::size_t permutations = 0;
};

/// Two-sample 2-d Kolmogorov-Smirnov statistic (Peacock): every pooled point
/// is an anchor, and for each of the four quadrants around it the absolute
/// difference of the two empirical quadrant probabilities is taken; the
/// maximum is returned. Points on an anchor's axes belong to the "<=" side.
/// O(N log N) with a Fenwick tree sweep.
double ks2d_statistic(const Matrix& sample_a, const Matrix& sample_b);

/// Permutation p-value, (count(D_perm >= D_obs) + 1) / (permutations + 1).
/// Replicate r draws from its own stream derived from (seed, r).
/// Needs permutations >= 100.
Ks2dResult ks2d_test(const Matrix& sample_a, const Matrix& sample_b, std::size_t permutations, std::uint64_t seed);

/// KL divergence for reporting. Forward: sum p log(p / q); reverse:
/// sum q log(q / p); the denominator is clipped at `clip`.
double kl_report(std::span<const double> q, std::span<const double> p, KlDirection direction,
                 double clip = kKlClip);

struct MarginalUniformityReport {
    std::size_t bins = 0;
    std::size_t shots = 0;
    double band = 0.0;  // 1/sqrt(shots), half-width around 1/bins
    std::vector<double> max_deviation;  // max_k |freq_k - 1/bins| per variable
    std::vector<bool> flagged;          // deviation above 3 bands

    bool within_band(std::size_t var) const { return max_deviation[var] <= band; }
};

/// Per-variable histograms of points in [0, 1)^d over `bins` bins.
MarginalUniformityReport marginal_uniformity(const Matrix& points, std::size_t bins);

/// Same report from per-variable relative frequencies (each of length bins),
/// measured with `shots` samples.
MarginalUniformityReport marginal_uniformity(std::span<const std::vector<double>> frequencies, std::size_t shots);

}  // namespace qcopula
