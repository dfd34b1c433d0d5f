#pragma once

#include <span>

#include "qcopula/copula.hpp"

namespace qcopula {

inline constexpr double kLogClip = 1e-12;
inline constexpr double kKlClip = 1e-6;

enum class KlDirection {
    Forward,  // sum p log(p / q), target first
    Reverse,  // sum q log(q / p), model first; what QCBM training minimises
};

/// sum_i a_i log(a_i / max(b_i, clip)); terms with a_i == 0 contribute 0.
double clipped_kl(std::span<const double> a, std::span<const double> b, double clip);

/// QCBM cost: sum q log(q / max(p, clip)) over the grid (model q, target p).
double qcbm_cost(const DiscreteDistribution2D& q, const DiscreteDistribution2D& p, double clip = kKlClip);

/// Binary cross-entropy discriminator loss averaged over 2m terms:
/// -(1/2m) sum [log D(x) + log(1 - D(G(z)))], log arguments clipped at 1e-12.
double discriminator_loss(std::span<const double> d_real, std::span<const double> d_fake);

/// Non-saturating generator loss -(1/m) sum log D(G(z)).
double generator_loss(std::span<const double> d_fake);

/// d discriminator_loss / d d_real and d d_fake (zero where clipped).
void discriminator_loss_grad(std::span<const double> d_real, std::span<const double> d_fake,
                             std::span<double> grad_real, std::span<double> grad_fake);
void generator_loss_grad(std::span<const double> d_fake, std::span<double> grad_fake);

}  // namespace qcopula
