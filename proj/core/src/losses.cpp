#include "qcopula/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcopula {
namespace {

double clipped_log(double x) { return std::log(std::max(x, kLogClip)); }

}  // namespace

double clipped_kl(std::span<const double> a, std::span<const double> b, double clip) {
    if (a.size() != b.size()) throw std::invalid_argument("KL: distribution sizes differ");
    if (!(clip > 0.0)) throw std::invalid_argument("KL: clip must be > 0");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > 0.0) s += a[i] * std::log(a[i] / std::max(b[i], clip));
    }
    return s;
}

double qcbm_cost(const DiscreteDistribution2D& q, const DiscreteDistribution2D& p, double clip) {
    if (q.bins_per_dim != p.bins_per_dim) throw std::invalid_argument("qcbm_cost: grid sizes differ");
    return clipped_kl(q.flat(), p.flat(), clip);
}

double discriminator_loss(std::span<const double> d_real, std::span<const double> d_fake) {
    if (d_real.empty() || d_fake.empty()) throw std::invalid_argument("discriminator_loss: empty batch");
    if (d_real.size() != d_fake.size()) throw std::invalid_argument("discriminator_loss: batch sizes differ");
    double s = 0.0;
    for (std::size_t i = 0; i < d_real.size(); ++i) s += clipped_log(d_real[i]) + clipped_log(1.0 - d_fake[i]);
    return -s / (2.0 * static_cast<double>(d_real.size()));
}

double generator_loss(std::span<const double> d_fake) {
    if (d_fake.empty()) throw std::invalid_argument("generator_loss: empty batch");
    double s = 0.0;
    for (double d : d_fake) s += clipped_log(d);
    return -s / static_cast<double>(d_fake.size());
}

void discriminator_loss_grad(std::span<const double> d_real, std::span<const double> d_fake,
                             std::span<double> grad_real, std::span<double> grad_fake) {
    const double scale = 1.0 / (2.0 * static_cast<double>(d_real.size()));
    for (std::size_t i = 0; i < d_real.size(); ++i) {
        grad_real[i] = d_real[i] > kLogClip ? -scale / d_real[i] : 0.0;
        const double one_minus = 1.0 - d_fake[i];
        grad_fake[i] = one_minus > kLogClip ? scale / one_minus : 0.0;
    }
}

void generator_loss_grad(std::span<const double> d_fake, std::span<double> grad_fake) {
    const double scale = 1.0 / static_cast<double>(d_fake.size());
    for (std::size_t i = 0; i < d_fake.size(); ++i) grad_fake[i] = d_fake[i] > kLogClip ? -scale / d_fake[i] : 0.0;
}

}  // namespace qcopula
