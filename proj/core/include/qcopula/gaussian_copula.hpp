#pragma once

#include <cstddef>
#include <cstdint>

#include "qcopula/matrix.hpp"

namespace qcopula {

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse standard normal CDF for p in (0, 1), absolute error below 1e-8.
/// Rational approximation refined by one Halley step on erfc.
double normal_quantile(double p);

struct GaussianCopulaModel {
    double rho = 0.0;  // |rho| < 1
};

/// rho = Pearson correlation of the normal scores Phi^-1(u), clamped to
/// [-0.999, 0.999]. Needs >= 10 two-column points; throws when the scores of
/// either column have zero variance.
GaussianCopulaModel fit_gaussian_copula(const Matrix& points);

/// Correlated normals via the Cholesky factor of [[1, rho], [rho, 1]] mapped
/// through Phi. Returns count x 2 points in (0, 1).
Matrix sample_gaussian_copula(const GaussianCopulaModel& model, std::size_t count, std::uint64_t seed);

}  // namespace qcopula
