#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "qcopula/eval.hpp"
#include "qcopula/gaussian_copula.hpp"
#include "qcopula/random.hpp"

using namespace qcopula;

namespace {

// One-sample KS distance of a column against U(0, 1).
double ks_uniform(std::vector<double> x) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        d = std::max({d, (i + 1) / n - x[i], x[i] - i / n});
    }
    return d;
}

}  // namespace

TEST(NormalQuantile, Examples) {
    EXPECT_NEAR(normal_quantile(0.5), 0.0, 1e-15);
    EXPECT_NEAR(normal_quantile(0.975), 1.95996398, 1e-8);
    EXPECT_NEAR(normal_quantile(0.975), oracle::phi_inverse(0.975), 1e-9);
    EXPECT_THROW(normal_quantile(0.0), std::invalid_argument);
    EXPECT_THROW(normal_quantile(1.0), std::invalid_argument);
}

TEST(NormalQuantile, MatchesBisectionOracle) {
    for (double p : {1e-10, 1e-6, 0.001, 0.02425, 0.1, 0.3, 0.5, 0.7, 0.9, 0.97575, 0.999, 1 - 1e-6}) {
        EXPECT_NEAR(normal_quantile(p), oracle::phi_inverse(p), 1e-8) << p;
    }
}

TEST(NormalQuantile, RoundTripWithIndependentPhi) {
    for (int i = 1; i < 1000; ++i) {
        const double p = i / 1000.0;
        EXPECT_NEAR(oracle::phi(normal_quantile(p)), p, 1e-8) << p;
    }
}

TEST(NormalCdf, MatchesSeries) {
    for (double x = -8.0; x <= 8.0; x += 0.37) EXPECT_NEAR(normal_cdf(x), oracle::phi(x), 1e-12) << x;
}

TEST(GaussianCopula, FitIndependent) {
    Rng rng(1);
    Matrix u(10000, 2);
    for (auto& v : u.data()) v = rng.uniform_open();
    EXPECT_LE(std::abs(fit_gaussian_copula(u).rho), 0.05);
}

TEST(GaussianCopula, FitComonotoneClamps) {
    Rng rng(2);
    Matrix u(100, 2);
    for (std::size_t r = 0; r < 100; ++r) u(r, 0) = u(r, 1) = rng.uniform_open();
    EXPECT_DOUBLE_EQ(fit_gaussian_copula(u).rho, 0.999);
}

TEST(GaussianCopula, FitErrors) {
    EXPECT_THROW(fit_gaussian_copula(Matrix(5, 2, 0.5)), std::invalid_argument);
    EXPECT_THROW(fit_gaussian_copula(Matrix(20, 2, 0.5)), std::invalid_argument);
}

TEST(GaussianCopula, RoundTrip) {
    for (double rho : {-0.8, 0.0, 0.5, 0.6, 0.9}) {
        const auto pts = sample_gaussian_copula({rho}, 10000, 7);
        EXPECT_NEAR(fit_gaussian_copula(pts).rho, rho, 0.05) << rho;
    }
}

TEST(GaussianCopula, MarginalsUniform) {
    for (double rho : {-0.5, 0.3, 0.95}) {
        const auto pts = sample_gaussian_copula({rho}, 5000, 11);
        for (std::size_t c = 0; c < 2; ++c) {
            // 1.36 / sqrt(N) is the 5% critical value of the one-sample KS test
            EXPECT_LT(ks_uniform(pts.column(c)), 1.36 / std::sqrt(5000.0)) << rho;
        }
        for (double v : pts.data()) {
            EXPECT_GT(v, 0.0);
            EXPECT_LT(v, 1.0);
        }
    }
}

TEST(GaussianCopula, IndependentVsProductOfUniforms) {
    const auto pts = sample_gaussian_copula({0.0}, 1000, 3);
    Rng rng(4);
    Matrix ref(1000, 2);
    for (auto& v : ref.data()) v = rng.uniform_open();
    EXPECT_GE(ks2d_test(pts, ref, 200, 5).p_value, 0.05);
}

TEST(GaussianCopula, StrongCorrelationNearDiagonal) {
    const auto pts = sample_gaussian_copula({0.999}, 1000, 3);
    double mean_gap = 0.0;
    for (std::size_t r = 0; r < pts.rows(); ++r) mean_gap += std::abs(pts(r, 0) - pts(r, 1)) / 1000.0;
    EXPECT_LT(mean_gap, 0.02);
    EXPECT_THROW(sample_gaussian_copula({1.0}, 10, 1), std::invalid_argument);
}
