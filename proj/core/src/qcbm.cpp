#include "qcopula/qcbm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qcopula {
namespace {

enum : std::uint64_t { kStreamInit = 1, kStreamSpsa = 2, kStreamShots = 3 };

}  // namespace

void QcbmConfig::validate() const {
    spec.validate();
    spsa.validate();
    noise.validate();
    if (spec.num_vars != 2) throw std::invalid_argument("QCBM training is defined for 2 variables");
    if (inner_steps == 0) throw std::invalid_argument("QCBM inner_steps must be >= 1");
    if (shots == 0) throw std::invalid_argument("QCBM shots must be >= 1");
    if (target.bins_per_dim != (std::size_t{1} << spec.qubits_per_register)) {
        throw std::invalid_argument("QCBM target grid must have 2^n bins per dimension");
    }
    if (theta0 && theta0->size() != param_count(spec)) throw std::invalid_argument("theta0 does not match the spec");
}

double qcbm_sample_cost(const QcbmConfig& config, std::span<const double> theta, Rng& rng) {
    QopulaSpec unpadded = config.spec;
    unpadded.pad_bits = 0;
    const Matrix points = sample_copula_points(unpadded, theta, config.shots, rng, config.noise);
    const DiscreteDistribution2D q = bin_2d(points, config.target.bins_per_dim);
    if (config.direction == KlDirection::Reverse) return qcbm_cost(q, config.target, config.clip);
    return clipped_kl(config.target.flat(), q.flat(), config.clip);
}

QcbmResult train_qcbm(const QcbmConfig& config, const RecordSink& sink) {
    config.validate();
    Rng init_rng(derive_seed(config.seed, kStreamInit));
    Rng shot_rng(derive_seed(config.seed, kStreamShots));
    Spsa spsa(config.spsa, derive_seed(config.seed, kStreamSpsa));

    ParamVector theta = config.theta0 ? *config.theta0 : random_parameters(config.spec, init_rng);
    const CostFunction cost = [&](std::span<const double> t) { return qcbm_sample_cost(config, t, shot_rng); };

    QcbmResult result;
    result.log.reserve(config.spsa.iterations);
    for (std::size_t it = 1; it <= config.spsa.iterations; ++it) {
        const double kl = cost(theta);
        TrainingRecord rec{it, {{"kl", kl}}, theta};
        if (it == 1 || kl < result.best_cost) {
            result.best_cost = kl;
            result.best_theta = theta;
            result.best_iteration = it;
        }
        if (sink) sink(rec);
        result.log.push_back(std::move(rec));
        if (config.inner_steps > 1) spsa.reset();
        for (std::size_t s = 0; s < config.inner_steps; ++s) spsa.step(cost, theta);
    }
    if (result.log.empty()) {
        result.best_theta = theta;
        result.best_cost = cost(theta);
    }
    return result;
}

std::vector<ParamVector> lowest_cost_snapshots(const QcbmResult& result, std::size_t count) {
    std::vector<std::size_t> order(result.log.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return *result.log[a].metric("kl") < *result.log[b].metric("kl");
    });
    std::vector<ParamVector> out;
    for (std::size_t idx : order) {
        if (out.size() == count) break;
        const auto& theta = result.log[idx].theta;
        if (theta.empty() || std::find(out.begin(), out.end(), theta) != out.end()) continue;
        out.push_back(theta);
    }
    if (out.empty() && !result.best_theta.empty()) out.push_back(result.best_theta);
    return out;
}

}  // namespace qcopula
