#include "qcopula/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcopula/statevec.hpp"

namespace qcopula {

void IqpInstance::validate() const {
    if (n < 1) throw std::invalid_argument("IQP instance needs n >= 1");
    if (couplings.rows() != n || couplings.cols() != n || fields.size() != n) {
        throw std::invalid_argument("IQP instance dimensions are inconsistent");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (couplings(i, i) != 0.0) throw std::invalid_argument("IQP couplings must have a zero diagonal");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (couplings(i, j) != couplings(j, i)) throw std::invalid_argument("IQP couplings must be symmetric");
        }
    }
}

IqpInstance random_iqp_instance(std::size_t n, Rng& rng) {
    IqpInstance inst{n, Matrix(n, n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        inst.fields[i] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = rng.uniform(0.0, 2.0 * std::numbers::pi);
            inst.couplings(i, j) = v;
            inst.couplings(j, i) = v;
        }
    }
    return inst;
}

std::vector<double> iqp_distribution(const IqpInstance& instance) {
    instance.validate();
    const std::size_t n = instance.n;
    if (n > 10) throw std::invalid_argument("iqp_distribution supports n <= 10");
    const std::size_t dim = std::size_t{1} << n;

    // H^n |0> is the uniform superposition; exp(iD) is diagonal with Z
    // eigenvalue +1 for bit 0 and -1 for bit 1.
    std::vector<Complex> amps(dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t z = 0; z < dim; ++z) {
        const auto spin = [&](std::size_t q) { return ((z >> (n - 1 - q)) & 1U) ? -1.0 : 1.0; };
        double d = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            d += instance.fields[k] * spin(k);
            for (std::size_t l = k + 1; l < n; ++l) d += instance.couplings(k, l) * spin(k) * spin(l);
        }
        amps[z] = std::polar(norm, d);
    }
    QuantumState state(std::move(amps));
    for (std::size_t q = 0; q < n; ++q) state.apply(Gate::h(q));
    return probabilities(state);
}

double conditioning_probability(const QopulaSpec& spec, std::span<const double> theta) {
    const auto probs = exact_distribution(spec, theta);
    double p = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (register_value(i, spec, 1) == 0) p += probs[i];
    }
    return p;
}

std::vector<double> qopula_conditional(const QopulaSpec& spec, std::span<const double> theta) {
    spec.validate();
    if (spec.num_vars != 2) throw std::invalid_argument("qopula_conditional is defined for 2 registers");
    const std::size_t per_reg = spec.params_per_register();
    if (theta.size() != param_count(spec)) throw std::invalid_argument("theta does not match the spec");
    const auto reg_b = theta.subspan(per_reg, per_reg);
    if (std::any_of(reg_b.begin(), reg_b.end(), [](double t) { return t != 0.0; })) {
        throw std::invalid_argument("qopula_conditional requires all register-B angles to be zero");
    }

    const auto probs = exact_distribution(spec, theta);
    std::vector<double> cond(std::size_t{1} << spec.qubits_per_register, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (register_value(i, spec, 1) != 0) continue;
        cond[register_value(i, spec, 0)] += probs[i];
        total += probs[i];
    }
    if (!(total > 0.0)) throw std::domain_error("conditioning event has zero probability");
    for (auto& c : cond) c /= total;
    return cond;
}

ParamVector iqp_reduction_parameters(const IqpInstance& instance) {
    instance.validate();
    const QopulaSpec spec{2, instance.n, 1, 0};
    const ParamLayout layout{instance.n, 1};
    ParamVector theta(param_count(spec), 0.0);
    for (std::size_t q = 0; q < instance.n; ++q) theta[layout.rx(0, q)] = instance.fields[q];
    for (std::size_t i = 0; i < instance.n; ++i) {
        for (std::size_t j = i + 1; j < instance.n; ++j) theta[layout.rxx(0, i, j)] = instance.couplings(i, j);
    }
    return theta;
}

double verify_iqp_reduction(const IqpInstance& instance) {
    instance.validate();
    if (instance.n > 8) throw std::invalid_argument("verify_iqp_reduction supports n <= 8");
    const QopulaSpec spec{2, instance.n, 1, 0};
    const auto cond = qopula_conditional(spec, iqp_reduction_parameters(instance));
    const auto iqp = iqp_distribution(instance);
    double worst = 0.0;
    for (std::size_t z = 0; z < iqp.size(); ++z) worst = std::max(worst, std::abs(cond[z] - iqp[z]));
    return worst;
}

}  // namespace qcopula
