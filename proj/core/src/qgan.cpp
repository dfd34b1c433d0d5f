#include "qcopula/qgan.hpp"

#include <stdexcept>

#include "qcopula/losses.hpp"

namespace qcopula {
namespace {

enum : std::uint64_t { kStreamInit = 11, kStreamDisc = 12, kStreamGen = 13, kStreamData = 14, kStreamSpsa = 15 };

}  // namespace

DiscriminatorTrainer::DiscriminatorTrainer(Mlp net, AdamConfig adam, DiscriminatorOptimizer optimizer)
    : net_(std::move(net)), adam_(adam), optimizer_(optimizer), state_(net_.parameter_count()) {
    adam_.validate();
}

std::vector<double> DiscriminatorTrainer::score(const Matrix& batch) {
    return forward(net_, batch, Mode::Eval).output.data();
}

double DiscriminatorTrainer::step(const Matrix& real, const Matrix& fake) {
    if (real.rows() != fake.rows()) throw std::invalid_argument("real and fake batches differ in size");
    auto fr = forward(net_, real, Mode::Train);
    auto ff = forward(net_, fake, Mode::Train);
    const auto& d_real = fr.output.data();
    const auto& d_fake = ff.output.data();
    const double loss = discriminator_loss(d_real, d_fake);

    Matrix g_real(real.rows(), 1);
    Matrix g_fake(fake.rows(), 1);
    discriminator_loss_grad(d_real, d_fake, g_real.data(), g_fake.data());
    auto grads = backward(net_, fr.cache, g_real).params;
    const auto grads_fake = backward(net_, ff.cache, g_fake).params;
    for (std::size_t i = 0; i < grads.size(); ++i) grads[i] += grads_fake[i];

    auto params = net_.parameters();
    if (optimizer_ == DiscriminatorOptimizer::Adam) {
        adam_step(params, grads, state_, adam_);
    } else {
        sgd_step(params, grads, adam_.learning_rate);
    }
    net_.set_parameters(params);
    return loss;
}

Matrix bootstrap_rows(const Matrix& data, std::size_t m, Rng& rng) {
    if (data.rows() == 0) throw std::invalid_argument("cannot bootstrap an empty data set");
    Matrix out(m, data.cols());
    for (std::size_t r = 0; r < m; ++r) {
        const auto src = data.row(rng.below(data.rows()));
        std::copy(src.begin(), src.end(), out.row(r).begin());
    }
    return out;
}

void QganConfig::validate() const {
    spec.validate();
    spsa.validate();
    discriminator.validate();
    noise.validate();
    if (spec.num_vars != 2) throw std::invalid_argument("QGAN training is defined for 2 variables");
    if (batch < 1) throw std::invalid_argument("QGAN batch size must be >= 1");
    if (discriminator_steps < 1) throw std::invalid_argument("discriminator_steps must be >= 1");
    if (theta0 && theta0->size() != param_count(spec)) throw std::invalid_argument("theta0 does not match the spec");
}

QganResult train_qgan(const QganConfig& config, const Matrix& real_points, const RecordSink& sink) {
    config.validate();
    if (real_points.cols() != 2 || real_points.rows() == 0) throw std::invalid_argument("QGAN needs 2-d real data");

    Rng init_rng(derive_seed(config.seed, kStreamInit));
    Rng gen_rng(derive_seed(config.seed, kStreamGen));
    Rng data_rng(derive_seed(config.seed, kStreamData));

    QganResult result;
    result.theta = config.theta0 ? *config.theta0 : random_parameters(config.spec, init_rng);
    const auto arch = discriminator_architecture();
    DiscriminatorTrainer disc(init_mlp(arch, derive_seed(config.seed, kStreamDisc)), config.discriminator,
                              config.discriminator_optimizer);

    const auto sample = [&](std::span<const double> theta) {
        return sample_copula_points(config.spec, theta, config.batch, gen_rng, config.noise);
    };
    const CostFunction generator_cost = [&](std::span<const double> theta) {
        return generator_loss(disc.score(sample(theta)));
    };

    result.log.reserve(config.iterations);
    for (std::size_t it = 1; it <= config.iterations; ++it) {
        const Matrix fake = sample(result.theta);
        double loss_d = 0.0;
        for (std::size_t s = 0; s < config.discriminator_steps; ++s) {
            const Matrix real = bootstrap_rows(real_points, config.batch, data_rng);
            const double l = disc.step(real, fake);
            if (s == 0) loss_d = l;
        }
        const double loss_g = generator_loss(disc.score(fake));

        Spsa spsa(config.spsa, derive_seed(config.seed, kStreamSpsa, it));
        for (std::size_t k = 0; k < config.spsa.iterations; ++k) spsa.step(generator_cost, result.theta);

        TrainingRecord rec{it, {{"loss_g", loss_g}, {"loss_d", loss_d}}, {}};
        if (sink) sink(rec);
        result.log.push_back(std::move(rec));
    }
    result.discriminator = disc.net();
    return result;
}

}  // namespace qcopula
