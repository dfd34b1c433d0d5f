#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcopula/nnet.hpp"
#include "qcopula/optim.hpp"
#include "qcopula/qopula.hpp"
#include "qcopula/training.hpp"

namespace qcopula {

enum class DiscriminatorOptimizer { Adam, Sgd };

/// Discriminator plus its optimiser state; one call to step() is one
/// descent step on the BCE discriminator loss.
class DiscriminatorTrainer {
public:
    DiscriminatorTrainer(Mlp net, AdamConfig adam, DiscriminatorOptimizer optimizer);

    /// Returns the loss measured before the update.
    double step(const Matrix& real, const Matrix& fake);
    std::vector<double> score(const Matrix& batch);

    const Mlp& net() const { return net_; }
    Mlp& net() { return net_; }

private:
    Mlp net_;
    AdamConfig adam_;
    DiscriminatorOptimizer optimizer_;
    AdamState state_;
};

/// m rows drawn with replacement.
Matrix bootstrap_rows(const Matrix& data, std::size_t m, Rng& rng);

struct QganConfig {
    QopulaSpec spec{2, 3, 1, 20};
    std::size_t batch = 2048;
    std::size_t iterations = 1000;
    /// Inner generator loop; `spsa.iterations` is n_iter and the schedule
    /// restarts at k = 1 in every outer iteration.
    SpsaConfig spsa{0.008, 0.01, 0.101, 5, 0};
    AdamConfig discriminator{0.0015, 0.9, 0.999, 1e-8};
    DiscriminatorOptimizer discriminator_optimizer = DiscriminatorOptimizer::Adam;
    std::size_t discriminator_steps = 1;
    NoiseConfig noise;
    std::uint64_t seed = 0;
    std::optional<ParamVector> theta0;  // uniform in [0, 2 pi) when absent

    void validate() const;
};

struct QganResult {
    ParamVector theta;
    Mlp discriminator;
    std::vector<TrainingRecord> log;  // {"loss_g", "loss_d"} per iteration
};

/// Adversarial training of the qopula generator against a classical
/// discriminator. `real_points` are copula-space rows in (0, 1)^2.
QganResult train_qgan(const QganConfig& config, const Matrix& real_points, const RecordSink& sink = {});

struct ClassicalGanConfig {
    std::size_t batch = 2048;
    std::size_t iterations = 20000;
    AdamConfig generator{0.0001, 0.9, 0.999, 1e-8};
    AdamConfig discriminator{0.0001, 0.9, 0.999, 1e-8};
    std::size_t discriminator_steps = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct ClassicalGanResult {
    Mlp generator;
    Mlp discriminator;
    std::vector<TrainingRecord> log;
};

/// Generator input: uniform noise in [0, 1]^6.
Matrix generator_noise(std::size_t m, Rng& rng);

ClassicalGanResult train_classical_gan(const ClassicalGanConfig& config, const Matrix& real_points,
                                       const RecordSink& sink = {});

/// Generator samples in evaluation mode (running batch-norm statistics).
Matrix sample_classical_generator(const Mlp& generator, std::size_t count, std::uint64_t seed);

}  // namespace qcopula
