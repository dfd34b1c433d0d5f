#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qcopula/matrix.hpp"

namespace qcopula {

/// r_t = (P_{t+1} - P_t) / P_t. Needs >= 2 prices, all strictly positive.
std::vector<double> daily_returns(std::span<const double> prices);

/// Probability integral transform by ranks: u_i = rank(x_i) / (N + 1), ranks
/// 1..N with ties given their average rank. Needs N >= 2.
std::vector<double> pit_transform(std::span<const double> data);

/// Applies pit_transform to every column.
Matrix pit_transform_columns(const Matrix& data);

/// Empirical marginal distribution backed by the sorted training sample.
class EmpiricalCdf {
public:
    explicit EmpiricalCdf(std::span<const double> sample);

    std::size_t size() const { return sorted_.size(); }
    const std::vector<double>& sorted_values() const { return sorted_; }
    double min() const { return sorted_.front(); }
    double max() const { return sorted_.back(); }

    /// Empirical quantile for u in (0, 1): linear interpolation between order
    /// statistics at position u * (N + 1), clamped to [min, max].
    double inverse(double u) const;

private:
    std::vector<double> sorted_;
};

double inverse_pit(double u, const EmpiricalCdf& cdf);

/// Maps each column of copula-space points through the matching marginal.
Matrix inverse_pit_columns(const Matrix& u, std::span<const EmpiricalCdf> marginals);

/// B x B grid of probabilities; probs(i, j) holds variable 1 in bin i and
/// variable 2 in bin j.
struct DiscreteDistribution2D {
    std::size_t bins_per_dim = 0;
    Matrix probs;

    double operator()(std::size_t i, std::size_t j) const { return probs(i, j); }
    std::span<const double> flat() const { return probs.data(); }
    double total() const;
};

/// bin index floor(u * B), clamped into [0, B-1]; normalised by point count.
DiscreteDistribution2D bin_2d(const Matrix& points, std::size_t bins_per_dim);

/// Exact grid distribution of a two-register measurement distribution whose
/// registers have `bits` qubits each (register 0 selects the row).
DiscreteDistribution2D grid_from_distribution(std::span<const double> probs, std::size_t bits);

}  // namespace qcopula
