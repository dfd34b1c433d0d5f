#include "qcopula/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qcopula/random.hpp"

namespace qcopula {
namespace {

enum : std::uint64_t { kStreamPermutation = 31 };

class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
    void reset() { std::fill(tree_.begin(), tree_.end(), 0); }
    void add(std::size_t i) {
        for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
    }
    // count of inserted ranks < i
    std::size_t prefix(std::size_t i) const {
        std::size_t s = 0;
        for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }

private:
    std::vector<std::size_t> tree_;
};

// Pooled geometry shared by the observed statistic and every permutation;
// only the sample labels change between calls.
class PooledKs {
public:
    PooledKs(const Matrix& a, const Matrix& b) : n_(a.rows() + b.rows()), x_(n_), y_(n_) {
        if (a.rows() == 0 || b.rows() == 0) throw std::invalid_argument("ks2d needs two non-empty samples");
        if (a.cols() != 2 || b.cols() != 2) throw std::invalid_argument("ks2d expects 2-d points");
        for (std::size_t i = 0; i < a.rows(); ++i) {
            x_[i] = a(i, 0);
            y_[i] = a(i, 1);
        }
        for (std::size_t i = 0; i < b.rows(); ++i) {
            x_[a.rows() + i] = b(i, 0);
            y_[a.rows() + i] = b(i, 1);
        }
        by_x_.resize(n_);
        std::iota(by_x_.begin(), by_x_.end(), 0);
        std::sort(by_x_.begin(), by_x_.end(), [&](std::size_t i, std::size_t j) { return x_[i] < x_[j]; });

        std::vector<double> ys(y_);
        std::sort(ys.begin(), ys.end());
        ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
        y_rank_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            y_rank_[i] = static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y_[i]) - ys.begin());
        }
        distinct_y_ = ys.size();
    }

    std::size_t size() const { return n_; }

    // in_a[i] marks pooled point i as belonging to sample A.
    double statistic(const std::vector<char>& in_a, std::size_t na) const {
        const std::size_t nb = n_ - na;
        // Points of each sample with y-rank <= r.
        std::vector<std::size_t> ya(distinct_y_ + 1, 0);
        std::vector<std::size_t> yb(distinct_y_ + 1, 0);
        for (std::size_t i = 0; i < n_; ++i) ++(in_a[i] ? ya : yb)[y_rank_[i] + 1];
        for (std::size_t r = 1; r <= distinct_y_; ++r) {
            ya[r] += ya[r - 1];
            yb[r] += yb[r - 1];
        }

        Fenwick fa(distinct_y_);
        Fenwick fb(distinct_y_);
        const double ia = 1.0 / static_cast<double>(na);
        const double ib = 1.0 / static_cast<double>(nb);
        std::size_t xa = 0;
        std::size_t xb = 0;
        double best = 0.0;
        std::size_t g = 0;
        while (g < n_) {
            std::size_t end = g;
            while (end < n_ && x_[by_x_[end]] == x_[by_x_[g]]) ++end;
            for (std::size_t k = g; k < end; ++k) {
                const std::size_t i = by_x_[k];
                if (in_a[i]) {
                    fa.add(y_rank_[i]);
                    ++xa;
                } else {
                    fb.add(y_rank_[i]);
                    ++xb;
                }
            }
            for (std::size_t k = g; k < end; ++k) {
                const std::size_t r = y_rank_[by_x_[k]] + 1;
                const auto lla = static_cast<double>(fa.prefix(r));
                const auto llb = static_cast<double>(fb.prefix(r));
                const auto ylo_a = static_cast<double>(ya[r]);
                const auto ylo_b = static_cast<double>(yb[r]);
                const auto dxa = static_cast<double>(xa);
                const auto dxb = static_cast<double>(xb);
                const double q1 = lla * ia - llb * ib;
                const double q2 = (dxa - lla) * ia - (dxb - llb) * ib;
                const double q3 = (ylo_a - lla) * ia - (ylo_b - llb) * ib;
                const double q4 = (static_cast<double>(na) - dxa - ylo_a + lla) * ia -
                                  (static_cast<double>(nb) - dxb - ylo_b + llb) * ib;
                best = std::max({best, std::abs(q1), std::abs(q2), std::abs(q3), std::abs(q4)});
            }
            g = end;
        }
        return best;
    }

private:
    std::size_t n_;
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<std::size_t> by_x_;
    std::vector<std::size_t> y_rank_;
    std::size_t distinct_y_ = 0;
};

}  // namespace

double ks2d_statistic(const Matrix& sample_a, const Matrix& sample_b) {
    const PooledKs pooled(sample_a, sample_b);
    std::vector<char> in_a(pooled.size(), 0);
    std::fill(in_a.begin(), in_a.begin() + static_cast<std::ptrdiff_t>(sample_a.rows()), 1);
    return pooled.statistic(in_a, sample_a.rows());
}

Ks2dResult ks2d_test(const Matrix& sample_a, const Matrix& sample_b, std::size_t permutations, std::uint64_t seed) {
    if (permutations < 100) throw std::invalid_argument("ks2d_test needs at least 100 permutations");
    const PooledKs pooled(sample_a, sample_b);
    const std::size_t na = sample_a.rows();
    std::vector<char> labels(pooled.size(), 0);
    std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(na), 1);
    const double observed = pooled.statistic(labels, na);

    // Statistics are sums of multiples of 1/na and 1/nb; compare with a
    // tolerance so rounding never decides a tie.
    const double tol = 1e-12;
    std::size_t at_least = 0;
    std::vector<char> perm(labels.size());
    for (std::size_t r = 0; r < permutations; ++r) {
        Rng rng(derive_seed(seed, kStreamPermutation, r));
        perm = labels;
        shuffle(perm.begin(), perm.end(), rng);
        if (pooled.statistic(perm, na) >= observed - tol) ++at_least;
    }
    return {observed, static_cast<double>(at_least + 1) / static_cast<double>(permutations + 1), permutations};
}

double kl_report(std::span<const double> q, std::span<const double> p, KlDirection direction, double clip) {
    if (q.size() != p.size()) throw std::invalid_argument("kl_report: distribution sizes differ");
    return direction == KlDirection::Forward ? clipped_kl(p, q, clip) : clipped_kl(q, p, clip);
}

MarginalUniformityReport marginal_uniformity(std::span<const std::vector<double>> frequencies, std::size_t shots) {
    if (frequencies.empty()) throw std::invalid_argument("marginal_uniformity needs at least one variable");
    const std::size_t bins = frequencies.front().size();
    if (bins < 2) throw std::invalid_argument("marginal_uniformity needs at least 2 bins");
    if (shots == 0) throw std::invalid_argument("marginal_uniformity needs shots >= 1");
    MarginalUniformityReport rep;
    rep.bins = bins;
    rep.shots = shots;
    rep.band = 1.0 / std::sqrt(static_cast<double>(shots));
    const double expected = 1.0 / static_cast<double>(bins);
    for (const auto& f : frequencies) {
        if (f.size() != bins) throw std::invalid_argument("marginal_uniformity: inconsistent bin counts");
        double dev = 0.0;
        for (double v : f) dev = std::max(dev, std::abs(v - expected));
        rep.max_deviation.push_back(dev);
        rep.flagged.push_back(dev > 3.0 * rep.band);
    }
    return rep;
}

MarginalUniformityReport marginal_uniformity(const Matrix& points, std::size_t bins) {
    if (bins < 2) throw std::invalid_argument("marginal_uniformity needs at least 2 bins");
    if (points.rows() == 0) throw std::invalid_argument("marginal_uniformity needs points");
    std::vector<std::vector<double>> freq(points.cols(), std::vector<double>(bins, 0.0));
    const double w = 1.0 / static_cast<double>(points.rows());
    for (std::size_t r = 0; r < points.rows(); ++r) {
        for (std::size_t c = 0; c < points.cols(); ++c) {
            const double f = std::floor(points(r, c) * static_cast<double>(bins));
            const std::size_t k = f > 0.0 ? std::min(static_cast<std::size_t>(f), bins - 1) : 0;
            freq[c][k] += w;
        }
    }
    return marginal_uniformity(freq, points.rows());
}

}  // namespace qcopula
