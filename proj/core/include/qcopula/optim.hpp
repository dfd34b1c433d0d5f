#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qcopula/random.hpp"

namespace qcopula {

using CostFunction = std::function<double(std::span<const double>)>;

struct SpsaConfig {
    double a = 0.008;      // initial learning rate, a_k = a / k
    double c = 0.01;       // initial perturbation, c_k = c / k^gamma
    double gamma = 0.101;
    std::size_t iterations = 5;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Simultaneous-perturbation gradient estimate. Exactly two cost
/// evaluations: g_i = [C(t + c D) - C(t - c D)] / (2 c D_i).
std::vector<double> spsa_gradient_estimate(const CostFunction& cost, std::span<const double> theta, double c_k,
                                           std::span<const int> delta);

/// Stateful SPSA iterator. k starts at 1 and keeps counting across calls to
/// step(), so the a/k and c/k^gamma schedules decay over the optimizer's life.
class Spsa {
public:
    Spsa(SpsaConfig config, std::uint64_t seed);

    struct StepResult {
        double cost_plus;
        double cost_minus;
    };

    /// One update of `theta` in place; consumes a fresh perturbation.
    StepResult step(const CostFunction& cost, std::vector<double>& theta);

    std::size_t iteration() const { return k_; }
    void reset() { k_ = 0; }
    const SpsaConfig& config() const { return config_; }

private:
    SpsaConfig config_;
    Rng rng_;
    std::size_t k_ = 0;
};

struct SpsaRunResult {
    std::vector<double> theta;
    std::vector<double> cost_trace;  // C(theta_k) after each update
};

SpsaRunResult spsa_run(const CostFunction& cost, std::vector<double> theta0, const SpsaConfig& config);

struct AdamConfig {
    double learning_rate = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;

    void validate() const;
};

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::size_t t = 0;

    explicit AdamState(std::size_t size = 0) : m(size, 0.0), v(size, 0.0) {}
};

/// Bias-corrected Adam update of `params` in place. Throws on size mismatch.
void adam_step(std::vector<double>& params, std::span<const double> grads, AdamState& state,
               const AdamConfig& config);

/// Plain gradient descent, params -= lr * grads.
void sgd_step(std::vector<double>& params, std::span<const double> grads, double learning_rate);

}  // namespace qcopula
