#pragma once

// Data ingestion and the end-to-end copula workflow behind the command-line
// tool: returns -> copula space -> fit -> sample -> back-transform -> 2-d KS.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcopula/eval.hpp"
#include "qcopula/matrix.hpp"
#include "qcopula/optim.hpp"
#include "qcopula/qopula.hpp"
#include "qcopula/serialization.hpp"
#include "qcopula/statevec.hpp"

namespace qcopula {

struct ReturnsDataset {
    std::string name1 = "r1";
    std::string name2 = "r2";
    std::vector<double> r1;
    std::vector<double> r2;

    std::size_t size() const { return r1.size(); }
    Matrix as_matrix() const;
};

/// Parses `date,<sym1>,<sym2>` price rows. Rows with a missing (empty, NA or
/// NaN) price are dropped from both series before returns are taken.
/// Throws std::invalid_argument on malformed input, non-positive prices or
/// fewer than 2 usable rows.
ReturnsDataset ingest_prices(std::istream& in);
ReturnsDataset ingest_prices_file(const std::filesystem::path& path);

/// `r1,r2` header, full double precision.
void write_returns_csv(std::ostream& out, const ReturnsDataset& data);
ReturnsDataset read_returns_csv(std::istream& in);
ReturnsDataset read_returns_file(const std::filesystem::path& path);

/// Two-column CSV with the given header names, 9 significant digits.
void write_points_csv(std::ostream& out, const Matrix& points, const std::string& h1, const std::string& h2);
Matrix read_points_csv(std::istream& in);
Matrix read_points_file(const std::filesystem::path& path);

enum class ModelKind { Qcbm, Qgan, ClassicalGan, Gaussian };

ModelKind parse_model_kind(const std::string& name);
std::string model_name(ModelKind kind);

struct PipelineConfig {
    ModelKind model = ModelKind::Qcbm;
    std::size_t qubits = 6;  // total over both registers
    std::size_t layers = 1;
    std::size_t pad_bits = 20;
    std::size_t shots = 2000;              // QCBM shots per cost evaluation
    std::optional<std::size_t> iterations;  // model default when absent
    double a = 0.0;                         // 0 selects the model default
    double c = 0.0;
    double gamma = 0.101;
    std::size_t n_inner = 5;                // SPSA steps per iteration (QCBM and QGAN)
    double lr_disc = 0.0015;
    double lr_gen = 0.0001;
    std::size_t batch = 2048;
    double noise_p = 0.0;
    std::uint64_t seed = 0;
    std::size_t permutations = 1000;
    std::size_t sample_count = 2048;     // QGAN, classical GAN, Gaussian
    std::size_t qcbm_circuits = 4;       // lowest-cost snapshots sampled after training
    std::size_t qcbm_shots_per_circuit = 500;

    QopulaSpec spec() const;
};

struct PipelineResult {
    std::string model;
    Matrix training_copula;  // PIT of the returns
    Matrix copula_samples;
    Matrix data_samples;     // back-transformed through the empirical marginals
    EvaluationReport report;
    std::string checkpoint_json;
    std::vector<std::string> log_lines;
};

using LogSink = std::function<void(const std::string&)>;

/// Transform -> fit -> sample -> inverse transform -> KS against a bootstrap
/// of the training copula sample (same size as the training set).
PipelineResult run_pipeline(const ReturnsDataset& data, const PipelineConfig& config, const LogSink& sink = {});

/// Copula-space samples from any checkpoint format (qopula, network, Gaussian).
Matrix sample_from_checkpoint(const std::string& checkpoint_json, std::size_t count, std::uint64_t seed,
                              const NoiseConfig& noise = {});

/// Copula-space evaluation of two samples, as reported by the pipeline.
EvaluationReport evaluate_samples(const std::string& model, const Matrix& samples, const Matrix& reference,
                                  std::size_t permutations, std::uint64_t seed);

/// Bootstrap resample of the training sample, seeded.
Matrix bootstrap_reference(const Matrix& training, std::uint64_t seed);

}  // namespace qcopula
