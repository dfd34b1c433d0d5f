#pragma once

// JSON formats shared by the command-line tool and downstream consumers.
//
//   qopula parameters  {"d": int, "n": int, "layers": int, "pad_bits": int, "theta": [float]}
//   network checkpoint {"layers": [{"in", "out", "activation", "leaky_slope",
//                                   "weights" (row-major), "biases", "batch_norm"?}]}
//   Gaussian copula    {"rho": float}
//   training log line  {"iter": int, <metric>: float, ...}
//   evaluation report  {"model": str, "d_ks": float, "p_value": float,
//                       "n_a": int, "n_b": int, "permutations": int}
//   reduction check    {"n": int, "max_diff": float}

#include <string>

#include "qcopula/eval.hpp"
#include "qcopula/gaussian_copula.hpp"
#include "qcopula/nnet.hpp"
#include "qcopula/qopula.hpp"
#include "qcopula/training.hpp"

namespace qcopula {

struct QopulaCheckpoint {
    QopulaSpec spec;
    ParamVector theta;
};

std::string qopula_to_json(const QopulaSpec& spec, std::span<const double> theta);
/// Throws std::invalid_argument on missing fields or a theta/spec mismatch.
QopulaCheckpoint qopula_from_json(const std::string& text);

std::string mlp_to_json(const Mlp& net);
Mlp mlp_from_json(const std::string& text);

std::string gaussian_to_json(const GaussianCopulaModel& model);
GaussianCopulaModel gaussian_from_json(const std::string& text);

/// One line, no trailing newline.
std::string training_record_to_json(const TrainingRecord& record);

struct EvaluationReport {
    std::string model;
    Ks2dResult ks;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
};

std::string report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(const std::string& text);

std::string reduction_check_to_json(std::size_t n, double max_diff);

}  // namespace qcopula
