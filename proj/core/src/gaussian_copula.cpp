#include "qcopula/gaussian_copula.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qcopula/random.hpp"

namespace qcopula {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile requires p in (0, 1)");

    // Acklam's rational approximation (relative error ~1e-9).
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                             1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                             6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                             -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                             3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step on Phi(x) - p; the upper tail is evaluated through
    // erfc(x / sqrt2) so that p close to 1 keeps its precision.
    const double e = p <= 0.5 ? normal_cdf(x) - p : (1.0 - p) - 0.5 * std::erfc(x / std::numbers::sqrt2);
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

GaussianCopulaModel fit_gaussian_copula(const Matrix& points) {
    if (points.cols() != 2) throw std::invalid_argument("Gaussian copula fit expects 2-d points");
    const std::size_t n = points.rows();
    if (n < 10) throw std::invalid_argument("Gaussian copula fit needs at least 10 points");
    std::vector<double> z1(n);
    std::vector<double> z2(n);
    for (std::size_t i = 0; i < n; ++i) {
        z1[i] = normal_quantile(points(i, 0));
        z2[i] = normal_quantile(points(i, 1));
    }
    const auto mean = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    const double m1 = mean(z1);
    const double m2 = mean(z2);
    double s11 = 0.0;
    double s22 = 0.0;
    double s12 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s11 += (z1[i] - m1) * (z1[i] - m1);
        s22 += (z2[i] - m2) * (z2[i] - m2);
        s12 += (z1[i] - m1) * (z2[i] - m2);
    }
    if (s11 <= 0.0 || s22 <= 0.0) throw std::invalid_argument("Gaussian copula fit: normal scores have zero variance");
    return {std::clamp(s12 / std::sqrt(s11 * s22), -0.999, 0.999)};
}

Matrix sample_gaussian_copula(const GaussianCopulaModel& model, std::size_t count, std::uint64_t seed) {
    if (!(std::abs(model.rho) < 1.0)) throw std::invalid_argument("Gaussian copula needs |rho| < 1");
    if (count == 0) throw std::invalid_argument("sample count must be >= 1");
    Rng rng(seed);
    const double l21 = model.rho;
    const double l22 = std::sqrt(1.0 - model.rho * model.rho);
    Matrix out(count, 2);
    for (std::size_t i = 0; i < count; ++i) {
        const double e1 = rng.normal();
        const double e2 = rng.normal();
        // Phi can round to exactly 0 or 1 far in the tails; keep points inside (0, 1).
        const auto to_unit = [](double z) {
            return std::clamp(normal_cdf(z), std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
        };
        out(i, 0) = to_unit(e1);
        out(i, 1) = to_unit(l21 * e1 + l22 * e2);
    }
    return out;
}

}  // namespace qcopula
