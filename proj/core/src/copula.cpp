#include "qcopula/copula.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcopula {

std::vector<double> daily_returns(std::span<const double> prices) {
    if (prices.size() < 2) throw std::invalid_argument("daily_returns needs at least 2 prices");
    for (double p : prices) {
        if (!(p > 0.0)) throw std::invalid_argument("prices must be strictly positive");
    }
    std::vector<double> r(prices.size() - 1);
    for (std::size_t t = 0; t + 1 < prices.size(); ++t) r[t] = (prices[t + 1] - prices[t]) / prices[t];
    return r;
}

std::vector<double> pit_transform(std::span<const double> data) {
    const std::size_t n = data.size();
    if (n < 2) throw std::invalid_argument("pit_transform needs at least 2 values");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return data[a] < data[b]; });

    std::vector<double> u(n);
    const double denom = static_cast<double>(n + 1);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && data[order[j + 1]] == data[order[i]]) ++j;
        // ranks i+1 .. j+1 share their average
        const double rank = 0.5 * static_cast<double>(i + 1 + j + 1);
        for (std::size_t k = i; k <= j; ++k) u[order[k]] = rank / denom;
        i = j + 1;
    }
    return u;
}

Matrix pit_transform_columns(const Matrix& data) {
    Matrix out(data.rows(), data.cols());
    for (std::size_t c = 0; c < data.cols(); ++c) {
        const auto u = pit_transform(data.column(c));
        for (std::size_t r = 0; r < data.rows(); ++r) out(r, c) = u[r];
    }
    return out;
}

EmpiricalCdf::EmpiricalCdf(std::span<const double> sample) : sorted_(sample.begin(), sample.end()) {
    if (sorted_.size() < 2) throw std::invalid_argument("EmpiricalCdf needs at least 2 values");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::inverse(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("inverse_pit requires u in (0, 1)");
    const double n = static_cast<double>(sorted_.size());
    const double h = u * (n + 1.0);  // 1-based order-statistic position
    if (h <= 1.0) return sorted_.front();
    if (h >= n) return sorted_.back();
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - static_cast<double>(lo);
    return sorted_[lo - 1] + frac * (sorted_[lo] - sorted_[lo - 1]);
}

double inverse_pit(double u, const EmpiricalCdf& cdf) { return cdf.inverse(u); }

Matrix inverse_pit_columns(const Matrix& u, std::span<const EmpiricalCdf> marginals) {
    if (marginals.size() != u.cols()) throw std::invalid_argument("one marginal per column required");
    Matrix out(u.rows(), u.cols());
    for (std::size_t r = 0; r < u.rows(); ++r) {
        for (std::size_t c = 0; c < u.cols(); ++c) out(r, c) = marginals[c].inverse(u(r, c));
    }
    return out;
}

double DiscreteDistribution2D::total() const {
    return std::accumulate(probs.data().begin(), probs.data().end(), 0.0);
}

DiscreteDistribution2D bin_2d(const Matrix& points, std::size_t bins_per_dim) {
    if (bins_per_dim < 1) throw std::invalid_argument("bins_per_dim must be >= 1");
    if (points.rows() == 0) throw std::invalid_argument("bin_2d needs at least one point");
    if (points.cols() != 2) throw std::invalid_argument("bin_2d expects 2-d points");
    const auto b = static_cast<double>(bins_per_dim);
    const auto bin = [&](double u) {
        const double f = std::floor(u * b);
        if (!(f > 0.0)) return std::size_t{0};
        return std::min(static_cast<std::size_t>(f), bins_per_dim - 1);
    };
    DiscreteDistribution2D out{bins_per_dim, Matrix(bins_per_dim, bins_per_dim)};
    const double w = 1.0 / static_cast<double>(points.rows());
    for (std::size_t r = 0; r < points.rows(); ++r) out.probs(bin(points(r, 0)), bin(points(r, 1))) += w;
    return out;
}

DiscreteDistribution2D grid_from_distribution(std::span<const double> probs, std::size_t bits) {
    const std::size_t b = std::size_t{1} << bits;
    if (probs.size() != b * b) throw std::invalid_argument("distribution size does not match 2 registers");
    return {b, Matrix(b, b, std::vector<double>(probs.begin(), probs.end()))};
}

}  // namespace qcopula
