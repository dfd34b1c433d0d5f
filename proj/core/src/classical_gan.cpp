#include <stdexcept>

#include "qcopula/losses.hpp"
#include "qcopula/qgan.hpp"

namespace qcopula {
namespace {

enum : std::uint64_t { kStreamGenInit = 21, kStreamDiscInit = 22, kStreamNoise = 23, kStreamData = 24 };

constexpr std::size_t kNoiseDim = 6;

}  // namespace

void ClassicalGanConfig::validate() const {
    generator.validate();
    discriminator.validate();
    if (batch < 2) throw std::invalid_argument("classical GAN batch must be >= 2 for batch norm");
    if (discriminator_steps < 1) throw std::invalid_argument("discriminator_steps must be >= 1");
}

Matrix generator_noise(std::size_t m, Rng& rng) {
    Matrix z(m, kNoiseDim);
    for (auto& v : z.data()) v = rng.uniform();
    return z;
}

ClassicalGanResult train_classical_gan(const ClassicalGanConfig& config, const Matrix& real_points,
                                       const RecordSink& sink) {
    config.validate();
    if (real_points.cols() != 2 || real_points.rows() == 0) throw std::invalid_argument("GAN needs 2-d real data");

    Rng noise_rng(derive_seed(config.seed, kStreamNoise));
    Rng data_rng(derive_seed(config.seed, kStreamData));

    const auto gen_arch = classical_generator_architecture();
    const auto disc_arch = discriminator_architecture();
    Mlp generator = init_mlp(gen_arch, derive_seed(config.seed, kStreamGenInit));
    AdamState gen_state(generator.parameter_count());
    DiscriminatorTrainer disc(init_mlp(disc_arch, derive_seed(config.seed, kStreamDiscInit)), config.discriminator,
                              DiscriminatorOptimizer::Adam);

    ClassicalGanResult result;
    result.log.reserve(config.iterations);
    const std::size_t m = config.batch;
    for (std::size_t it = 1; it <= config.iterations; ++it) {
        const Matrix z = generator_noise(m, noise_rng);

        // The discriminator step treats the generator output as constant data.
        auto gen_pass = forward(generator, z, Mode::Train);
        const Matrix& fake = gen_pass.output;
        double loss_d = 0.0;
        for (std::size_t s = 0; s < config.discriminator_steps; ++s) {
            const Matrix real = bootstrap_rows(real_points, m, data_rng);
            const double l = disc.step(real, fake);
            if (s == 0) loss_d = l;
        }

        auto disc_pass = forward(disc.net(), gen_pass.output, Mode::Eval);
        const auto& d_fake = disc_pass.output.data();
        const double loss_g = generator_loss(d_fake);
        Matrix g_out(m, 1);
        generator_loss_grad(d_fake, g_out.data());
        const Matrix g_fake = backward(disc.net(), disc_pass.cache, g_out).input;
        const auto g_params = backward(generator, gen_pass.cache, g_fake).params;
        auto params = generator.parameters();
        adam_step(params, g_params, gen_state, config.generator);
        generator.set_parameters(params);

        TrainingRecord rec{it, {{"loss_g", loss_g}, {"loss_d", loss_d}}, {}};
        if (sink) sink(rec);
        result.log.push_back(std::move(rec));
    }
    result.generator = std::move(generator);
    result.discriminator = disc.net();
    return result;
}

Matrix sample_classical_generator(const Mlp& generator, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw std::invalid_argument("sample count must be >= 1");
    Rng rng(seed);
    return predict(generator, generator_noise(count, rng));
}

}  // namespace qcopula
