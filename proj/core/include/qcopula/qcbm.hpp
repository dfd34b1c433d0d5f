#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcopula/copula.hpp"
#include "qcopula/losses.hpp"
#include "qcopula/optim.hpp"
#include "qcopula/qopula.hpp"
#include "qcopula/training.hpp"

namespace qcopula {

struct QcbmConfig {
    QopulaSpec spec{2, 3, 1, 0};
    SpsaConfig spsa{0.5, 0.5, 0.101, 200, 0};
    std::size_t shots = 2000;
    /// SPSA updates per iteration. With more than one, the gain schedule
    /// restarts at k = 1 every iteration, as in the QGAN generator loop;
    /// with one, k counts iterations.
    std::size_t inner_steps = 5;
    DiscreteDistribution2D target;
    double clip = kKlClip;
    KlDirection direction = KlDirection::Reverse;
    NoiseConfig noise;
    std::uint64_t seed = 0;
    /// Starting angles; uniform in [0, 2 pi) when absent.
    std::optional<ParamVector> theta0;

    void validate() const;
};

struct QcbmResult {
    ParamVector best_theta;
    double best_cost = 0.0;
    std::size_t best_iteration = 0;
    std::vector<TrainingRecord> log;  // one {"kl"} record per iteration, with theta snapshots
};

/// Shot-estimated KL cost of `theta` against the target (padding disabled).
double qcbm_sample_cost(const QcbmConfig& config, std::span<const double> theta, Rng& rng);

/// Per iteration: estimate the KL of theta_k from fresh shots and log it,
/// then apply one SPSA update. Returns the logged theta of minimum cost.
QcbmResult train_qcbm(const QcbmConfig& config, const RecordSink& sink = {});

/// The `count` distinct logged parameter snapshots with the lowest cost,
/// best first.
std::vector<ParamVector> lowest_cost_snapshots(const QcbmResult& result, std::size_t count);

}  // namespace qcopula
