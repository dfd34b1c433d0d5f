#include "qcopula/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace qcopula {

void SpsaConfig::validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("SPSA a must be > 0");
    if (!(c > 0.0)) throw std::invalid_argument("SPSA c must be > 0");
    if (!(gamma > 0.0)) throw std::invalid_argument("SPSA gamma must be > 0");
}

std::vector<double> spsa_gradient_estimate(const CostFunction& cost, std::span<const double> theta, double c_k,
                                           std::span<const int> delta) {
    if (!(c_k > 0.0)) throw std::invalid_argument("c_k must be > 0");
    if (delta.size() != theta.size()) throw std::invalid_argument("perturbation size mismatch");
    std::vector<double> plus(theta.begin(), theta.end());
    std::vector<double> minus(theta.begin(), theta.end());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (delta[i] != 1 && delta[i] != -1) throw std::invalid_argument("perturbation entries must be +-1");
        plus[i] += c_k * delta[i];
        minus[i] -= c_k * delta[i];
    }
    const double diff = cost(plus) - cost(minus);
    std::vector<double> g(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) g[i] = diff / (2.0 * c_k * delta[i]);
    return g;
}

Spsa::Spsa(SpsaConfig config, std::uint64_t seed) : config_(config), rng_(seed) { config_.validate(); }

Spsa::StepResult Spsa::step(const CostFunction& cost, std::vector<double>& theta) {
    ++k_;
    const double k = static_cast<double>(k_);
    const double a_k = config_.a / k;
    const double c_k = config_.c / std::pow(k, config_.gamma);

    std::vector<int> delta(theta.size());
    for (auto& d : delta) d = rng_.bit() ? 1 : -1;

    std::vector<double> plus(theta);
    std::vector<double> minus(theta);
    for (std::size_t i = 0; i < theta.size(); ++i) {
        plus[i] += c_k * delta[i];
        minus[i] -= c_k * delta[i];
    }
    const StepResult r{cost(plus), cost(minus)};
    const double diff = r.cost_plus - r.cost_minus;
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= a_k * diff / (2.0 * c_k * delta[i]);
    return r;
}

SpsaRunResult spsa_run(const CostFunction& cost, std::vector<double> theta0, const SpsaConfig& config) {
    Spsa spsa(config, config.seed);
    SpsaRunResult out{std::move(theta0), {}};
    out.cost_trace.reserve(config.iterations);
    for (std::size_t i = 0; i < config.iterations; ++i) {
        spsa.step(cost, out.theta);
        out.cost_trace.push_back(cost(out.theta));
    }
    return out;
}

void AdamConfig::validate() const {
    if (!(learning_rate > 0.0)) throw std::invalid_argument("Adam learning rate must be > 0");
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
        throw std::invalid_argument("Adam betas must lie in [0, 1)");
    }
    if (!(epsilon > 0.0)) throw std::invalid_argument("Adam epsilon must be > 0");
}

void adam_step(std::vector<double>& params, std::span<const double> grads, AdamState& state,
               const AdamConfig& config) {
    if (grads.size() != params.size() || state.m.size() != params.size() || state.v.size() != params.size()) {
        throw std::invalid_argument("Adam: parameter/gradient/state size mismatch");
    }
    ++state.t;
    const double t = static_cast<double>(state.t);
    const double bc1 = 1.0 - std::pow(config.beta1, t);
    const double bc2 = 1.0 - std::pow(config.beta2, t);
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * grads[i];
        state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * grads[i] * grads[i];
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.epsilon);
    }
}

void sgd_step(std::vector<double>& params, std::span<const double> grads, double learning_rate) {
    if (grads.size() != params.size()) throw std::invalid_argument("SGD: parameter/gradient size mismatch");
    for (std::size_t i = 0; i < params.size(); ++i) params[i] -= learning_rate * grads[i];
}

}  // namespace qcopula
