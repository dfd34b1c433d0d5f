#include "qcopula/qopula.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcopula {

void QopulaSpec::validate() const {
    if (num_vars < 2) throw std::invalid_argument("qopula needs at least 2 variables");
    if (qubits_per_register < 1) throw std::invalid_argument("qopula needs at least 1 qubit per register");
    if (layers < 1) throw std::invalid_argument("qopula needs at least 1 layer");
    if (total_qubits() > kMaxQubits) throw std::invalid_argument("qopula exceeds the simulator qubit cap");
    if (qubits_per_register + pad_bits > 60) throw std::invalid_argument("register bits plus padding exceed 60");
}

std::size_t QopulaSpec::params_per_layer() const { return ParamLayout{qubits_per_register, layers}.per_layer(); }

std::size_t param_count(const QopulaSpec& spec) { return spec.num_vars * spec.params_per_register(); }

std::size_t ParamLayout::rxx(std::size_t layer, std::size_t i, std::size_t j) const {
    // Pairs before row i: sum_{a < i} (n - 1 - a).
    const std::size_t before = i * (n - 1) - i * (i - 1) / 2;
    return layer * per_layer() + 3 * n + before + (j - i - 1);
}

Circuit entangler_circuit(std::size_t d, std::size_t n) {
    if (d < 2 || n < 1) throw std::invalid_argument("entangler needs d >= 2 and n >= 1");
    Circuit c(d * n);
    for (std::size_t j = 0; j < n; ++j) {
        c.add(Gate::h(j));
        for (std::size_t r = 1; r < d; ++r) c.add(Gate::cnot(j, r * n + j));
    }
    return c;
}

Circuit local_ansatz_circuit(std::size_t n, std::size_t layers, std::span<const double> register_params) {
    const ParamLayout layout{n, layers};
    if (register_params.size() != layers * layout.per_layer()) {
        throw std::invalid_argument("local ansatz expects " + std::to_string(layers * layout.per_layer()) +
                                    " parameters, got " + std::to_string(register_params.size()));
    }
    Circuit c(n);
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t q = 0; q < n; ++q) c.add(Gate::rz(q, register_params[layout.first_rz(l, q)]));
        for (std::size_t q = 0; q < n; ++q) c.add(Gate::rx(q, register_params[layout.rx(l, q)]));
        for (std::size_t q = 0; q < n; ++q) c.add(Gate::rz(q, register_params[layout.second_rz(l, q)]));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) c.add(Gate::rxx(i, j, register_params[layout.rxx(l, i, j)]));
        }
    }
    return c;
}

Circuit assemble(const QopulaSpec& spec, std::span<const double> theta) {
    spec.validate();
    if (theta.size() != param_count(spec)) {
        throw std::invalid_argument("theta has " + std::to_string(theta.size()) + " entries, spec needs " +
                                    std::to_string(param_count(spec)));
    }
    const std::size_t n = spec.qubits_per_register;
    const std::size_t per_reg = spec.params_per_register();
    Circuit c = entangler_circuit(spec.num_vars, n);
    for (std::size_t r = 0; r < spec.num_vars; ++r) {
        c.append(local_ansatz_circuit(n, spec.layers, theta.subspan(r * per_reg, per_reg)), r * n);
    }
    return c;
}

std::vector<double> exact_distribution(const QopulaSpec& spec, std::span<const double> theta) {
    const Circuit c = assemble(spec, theta);
    return probabilities(apply_circuit(zero_state(c.num_qubits()), c));
}

std::uint64_t register_value(std::uint64_t basis_index, const QopulaSpec& spec, std::size_t reg) {
    const std::size_t n = spec.qubits_per_register;
    const std::size_t shift = (spec.num_vars - 1 - reg) * n;
    return (basis_index >> shift) & ((std::uint64_t{1} << n) - 1);
}

std::vector<std::vector<double>> register_marginals(std::span<const double> probs, const QopulaSpec& spec) {
    if (probs.size() != (std::size_t{1} << spec.total_qubits())) {
        throw std::invalid_argument("distribution size does not match spec");
    }
    std::vector<std::vector<double>> out(spec.num_vars,
                                         std::vector<double>(std::size_t{1} << spec.qubits_per_register, 0.0));
    for (std::size_t i = 0; i < probs.size(); ++i) {
        for (std::size_t r = 0; r < spec.num_vars; ++r) out[r][register_value(i, spec, r)] += probs[i];
    }
    return out;
}

double index_to_unit(std::uint64_t k, std::size_t width) {
    if (width < 1 || width > 60) throw std::invalid_argument("bit width must lie in [1, 60]");
    if (k >> width) throw std::invalid_argument("value does not fit in the given bit width");
    // long double keeps k + 0.5 exact; clamp guards the final rounding to double.
    const long double v = (static_cast<long double>(k) + 0.5L) / std::ldexp(1.0L, static_cast<int>(width));
    return std::min(static_cast<double>(v), std::nextafter(1.0, 0.0));
}

double bits_to_unit(std::span<const std::uint8_t> bits) {
    if (bits.empty()) throw std::invalid_argument("bits_to_unit needs at least one bit");
    if (bits.size() > 60) throw std::invalid_argument("bits_to_unit supports at most 60 bits");
    std::uint64_t k = 0;
    for (auto b : bits) {
        if (b > 1) throw std::invalid_argument("bits must be 0 or 1");
        k = (k << 1) | b;
    }
    return index_to_unit(k, bits.size());
}

Matrix indices_to_points(std::span<const std::uint64_t> indices, const QopulaSpec& spec, Rng& rng) {
    const std::size_t width = spec.qubits_per_register + spec.pad_bits;
    const std::uint64_t pad_mask = spec.pad_bits == 0 ? 0 : (std::uint64_t{1} << spec.pad_bits) - 1;
    Matrix points(indices.size(), spec.num_vars);
    for (std::size_t s = 0; s < indices.size(); ++s) {
        for (std::size_t r = 0; r < spec.num_vars; ++r) {
            std::uint64_t k = register_value(indices[s], spec, r);
            if (spec.pad_bits > 0) k = (k << spec.pad_bits) | (rng.next() & pad_mask);
            points(s, r) = index_to_unit(k, width);
        }
    }
    return points;
}

Matrix sample_copula_points(const QopulaSpec& spec, std::span<const double> theta, std::size_t shots, Rng& rng,
                            const NoiseConfig& noise) {
    if (shots == 0) throw std::invalid_argument("shots must be >= 1");
    const Circuit circuit = assemble(spec, theta);
    std::vector<std::uint64_t> indices;
    if (noise.enabled()) {
        NoisySampler sampler(circuit, noise);
        indices = sampler.sample(shots, rng);
    } else {
        const auto probs = probabilities(apply_circuit(zero_state(circuit.num_qubits()), circuit));
        indices = sample_indices(probs, shots, rng);
    }
    return indices_to_points(indices, spec, rng);
}

Matrix sample_copula_points(const QopulaSpec& spec, std::span<const double> theta, std::size_t shots,
                            std::uint64_t seed, const NoiseConfig& noise) {
    Rng rng(seed);
    return sample_copula_points(spec, theta, shots, rng, noise);
}

ParamVector transfer_parameters(const QopulaSpec& from, std::span<const double> theta, const QopulaSpec& to) {
    from.validate();
    to.validate();
    if (theta.size() != param_count(from)) throw std::invalid_argument("theta does not match source spec");
    if (from.num_vars != to.num_vars) throw std::invalid_argument("transfer requires the same number of variables");
    if (to.qubits_per_register < from.qubits_per_register || to.layers < from.layers) {
        throw std::invalid_argument("transfer target must not be smaller than the source");
    }
    const ParamLayout src{from.qubits_per_register, from.layers};
    const ParamLayout dst{to.qubits_per_register, to.layers};
    ParamVector out(param_count(to), 0.0);
    for (std::size_t r = 0; r < from.num_vars; ++r) {
        const std::size_t so = src.register_offset(r);
        const std::size_t dof = dst.register_offset(r);
        for (std::size_t l = 0; l < from.layers; ++l) {
            for (std::size_t q = 0; q < src.n; ++q) {
                out[dof + dst.first_rz(l, q)] = theta[so + src.first_rz(l, q)];
                out[dof + dst.rx(l, q)] = theta[so + src.rx(l, q)];
                out[dof + dst.second_rz(l, q)] = theta[so + src.second_rz(l, q)];
            }
            for (std::size_t i = 0; i < src.n; ++i) {
                for (std::size_t j = i + 1; j < src.n; ++j) out[dof + dst.rxx(l, i, j)] = theta[so + src.rxx(l, i, j)];
            }
        }
    }
    return out;
}

ParamVector random_parameters(const QopulaSpec& spec, Rng& rng) {
    ParamVector theta(param_count(spec));
    for (auto& t : theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return theta;
}

}  // namespace qcopula
