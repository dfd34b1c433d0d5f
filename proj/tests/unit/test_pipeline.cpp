#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "qcopula/pipeline.hpp"

using namespace qcopula;

namespace {

ReturnsDataset synthetic() { return ingest_prices_file(std::string(QCOPULA_DATA_DIR) + "/synthetic_prices.csv"); }

}  // namespace

TEST(Ingest, ThreeRows) {
    std::istringstream in("date,A,B\n2020-01-01,100,10\n2020-01-02,110,10\n2020-01-03,99,11\n");
    const auto d = ingest_prices(in);
    EXPECT_EQ(d.name1, "A");
    EXPECT_EQ(d.name2, "B");
    ASSERT_EQ(d.size(), 2u);
    EXPECT_NEAR(d.r1[0], 0.10, 1e-15);
    EXPECT_NEAR(d.r1[1], -0.10, 1e-15);
    EXPECT_NEAR(d.r2[0], 0.0, 1e-15);
    EXPECT_NEAR(d.r2[1], 0.10, 1e-15);
}

TEST(Ingest, MissingCellDropsRowFromBoth) {
    std::istringstream in("date,A,B\n2020-01-01,100,10\n2020-01-02,,12\n2020-01-03,110,11\n2020-01-06,121,NA\n");
    const auto d = ingest_prices(in);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_NEAR(d.r1[0], 0.10, 1e-15);
    EXPECT_NEAR(d.r2[0], 0.10, 1e-15);
}

TEST(Ingest, Errors) {
    std::istringstream one("date,A,B\n2020-01-01,100,10\n");
    EXPECT_THROW(ingest_prices(one), std::invalid_argument);
    std::istringstream neg("date,A,B\n2020-01-01,100,10\n2020-01-02,-1,10\n");
    EXPECT_THROW(ingest_prices(neg), std::invalid_argument);
    std::istringstream junk("date,A,B\n2020-01-01,abc,10\n2020-01-02,1,10\n");
    EXPECT_THROW(ingest_prices(junk), std::invalid_argument);
    std::istringstream cols("date,A\n2020-01-01,1\n");
    EXPECT_THROW(ingest_prices(cols), std::invalid_argument);
    std::istringstream empty("");
    EXPECT_THROW(ingest_prices(empty), std::invalid_argument);
}

TEST(Csv, ReturnsRoundTripExact) {
    const auto d = synthetic();
    std::stringstream s;
    write_returns_csv(s, d);
    const auto back = read_returns_csv(s);
    EXPECT_EQ(back.r1, d.r1);
    EXPECT_EQ(back.r2, d.r2);
}

TEST(Csv, PointsNineDigits) {
    Matrix m(1, 2, std::vector<double>{0.123456789123, 0.5});
    std::stringstream s;
    write_points_csv(s, m, "u1", "u2");
    EXPECT_EQ(s.str(), "u1,u2\n0.123456789,0.5\n");
    const auto back = read_points_csv(s);
    EXPECT_DOUBLE_EQ(back(0, 0), 0.123456789);
}

TEST(ModelKind, Names) {
    for (const char* n : {"qcbm", "qgan", "cgan", "gaussian"}) EXPECT_EQ(model_name(parse_model_kind(n)), n);
    EXPECT_THROW(parse_model_kind("vae"), std::invalid_argument);
}

TEST(Pipeline, GaussianOnSyntheticData) {
    PipelineConfig cfg;
    cfg.model = ModelKind::Gaussian;
    cfg.seed = 1;
    cfg.permutations = 200;
    const auto data = synthetic();
    const auto r = run_pipeline(data, cfg);
    EXPECT_GE(r.report.ks.p_value, 0.05);
    EXPECT_EQ(r.copula_samples.rows(), cfg.sample_count);
    const auto [lo1, hi1] = std::minmax_element(data.r1.begin(), data.r1.end());
    for (std::size_t i = 0; i < r.data_samples.rows(); ++i) {
        EXPECT_GE(r.data_samples(i, 0), *lo1);
        EXPECT_LE(r.data_samples(i, 0), *hi1);
    }
}

TEST(Pipeline, QcbmDeterministicAndCheckpointReplays) {
    PipelineConfig cfg;
    cfg.model = ModelKind::Qcbm;
    cfg.iterations = 10;
    cfg.seed = 4;
    cfg.permutations = 100;
    const auto data = synthetic();
    std::vector<std::string> streamed;
    const auto a = run_pipeline(data, cfg, [&](const std::string& l) { streamed.push_back(l); });
    const auto b = run_pipeline(data, cfg);
    EXPECT_EQ(a.log_lines, b.log_lines);
    EXPECT_EQ(streamed, a.log_lines);
    EXPECT_EQ(a.checkpoint_json, b.checkpoint_json);
    EXPECT_EQ(a.copula_samples, b.copula_samples);
    EXPECT_EQ(a.copula_samples.rows(), 2000u);
    // A saved checkpoint regenerates identical samples for a given seed.
    EXPECT_EQ(sample_from_checkpoint(a.checkpoint_json, 300, 8), sample_from_checkpoint(b.checkpoint_json, 300, 8));
}

TEST(Pipeline, CheckpointFormatsDetected) {
    const auto g = sample_from_checkpoint(gaussian_to_json({0.5}), 50, 1);
    EXPECT_EQ(g.rows(), 50u);
    const auto n = sample_from_checkpoint(mlp_to_json(init_mlp(classical_generator_architecture(), 2)), 50, 1);
    EXPECT_EQ(n.rows(), 50u);
    const auto q = sample_from_checkpoint(qopula_to_json({2, 3, 1, 20}, ParamVector(24, 0.1)), 50, 1);
    EXPECT_EQ(q.rows(), 50u);
}

TEST(Pipeline, ConfigErrors) {
    PipelineConfig cfg;
    cfg.qubits = 5;
    EXPECT_THROW(cfg.spec(), std::invalid_argument);
    ReturnsDataset tiny;
    tiny.r1 = tiny.r2 = {0.1, 0.2};
    EXPECT_THROW(run_pipeline(tiny, PipelineConfig{}), std::invalid_argument);
}
