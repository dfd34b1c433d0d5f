#include <gtest/gtest.h>

#include <algorithm>

#include "qcopula/copula.hpp"
#include "qcopula/random.hpp"

using namespace qcopula;

TEST(Returns, Examples) {
    const std::vector<double> a{100, 110};
    EXPECT_NEAR(daily_returns(a)[0], 0.10, 1e-15);
    const std::vector<double> b{100, 100, 100};
    EXPECT_EQ(daily_returns(b), (std::vector<double>{0.0, 0.0}));
    const std::vector<double> c{100, 50};
    EXPECT_DOUBLE_EQ(daily_returns(c)[0], -0.5);
    const std::vector<double> one{100};
    EXPECT_THROW(daily_returns(one), std::invalid_argument);
    const std::vector<double> bad{100, 0};
    EXPECT_THROW(daily_returns(bad), std::invalid_argument);
}

TEST(Pit, RankOverNPlusOne) {
    const std::vector<double> x{3, 1, 2};
    const auto u = pit_transform(x);
    EXPECT_DOUBLE_EQ(u[0], 0.75);
    EXPECT_DOUBLE_EQ(u[1], 0.25);
    EXPECT_DOUBLE_EQ(u[2], 0.50);
}

TEST(Pit, TiesAverageRank) {
    const std::vector<double> x{5, 5};
    const auto u = pit_transform(x);
    EXPECT_DOUBLE_EQ(u[0], 0.5);
    EXPECT_DOUBLE_EQ(u[1], 0.5);
}

TEST(Pit, MonotoneAndOpenInterval) {
    Rng rng(2);
    std::vector<double> x(500);
    for (auto& v : x) v = rng.normal();
    std::sort(x.begin(), x.end());
    const auto u = pit_transform(x);
    for (std::size_t i = 1; i < u.size(); ++i) EXPECT_LT(u[i - 1], u[i]);
    EXPECT_GT(u.front(), 0.0);
    EXPECT_LT(u.back(), 1.0);
}

TEST(EmpiricalCdf, Inverse) {
    const std::vector<double> data{3, 1, 2};
    const EmpiricalCdf cdf(data);
    EXPECT_DOUBLE_EQ(cdf.inverse(0.5), 2.0);
    EXPECT_DOUBLE_EQ(cdf.inverse(1e-9), 1.0);
    EXPECT_DOUBLE_EQ(cdf.inverse(1 - 1e-9), 3.0);
    EXPECT_DOUBLE_EQ(cdf.inverse(0.375), 1.5);
}

TEST(EmpiricalCdf, RoundTripOnTrainingRanks) {
    Rng rng(4);
    std::vector<double> x(200);
    for (auto& v : x) v = rng.normal();
    const EmpiricalCdf cdf(x);
    const auto u = pit_transform(x);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(cdf.inverse(u[i]), x[i], 1e-12);
}

TEST(EmpiricalCdf, BackTransformWithinRange) {
    Rng rng(5);
    std::vector<double> x(100);
    for (auto& v : x) v = rng.normal();
    const EmpiricalCdf cdf(x);
    for (int i = 0; i < 1000; ++i) {
        const double y = inverse_pit(rng.uniform_open(), cdf);
        EXPECT_GE(y, cdf.min());
        EXPECT_LE(y, cdf.max());
    }
}

TEST(Binning, QuadrantCentres) {
    Matrix pts(4, 2, std::vector<double>{0.25, 0.25, 0.25, 0.75, 0.75, 0.25, 0.75, 0.75});
    const auto d = bin_2d(pts, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) EXPECT_DOUBLE_EQ(d(i, j), 0.25);
}

TEST(Binning, IdenticalPointsAndClamp) {
    Matrix pts(3, 2, std::vector<double>{1.0, 1.0, 1.0, 1.0, 1.0, 1.0});
    const auto d = bin_2d(pts, 4);
    EXPECT_DOUBLE_EQ(d(3, 3), 1.0);
    EXPECT_NEAR(d.total(), 1.0, 1e-15);
    EXPECT_THROW(bin_2d(Matrix(0, 2), 4), std::invalid_argument);
}

TEST(Binning, GridRowIsFirstVariable) {
    std::vector<double> p(16, 0.0);
    p[1 * 4 + 2] = 1.0;  // register 0 reads 1, register 1 reads 2
    const auto g = grid_from_distribution(p, 2);
    EXPECT_DOUBLE_EQ(g(1, 2), 1.0);
    EXPECT_THROW(grid_from_distribution(p, 3), std::invalid_argument);
}
