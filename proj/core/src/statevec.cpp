#include "qcopula/statevec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcopula {
namespace {

constexpr std::size_t kMaxCachedFaultPatterns = 4096;

void check_qubit_count(std::size_t n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("qubit count " + std::to_string(n) + " outside [1, " +
                                    std::to_string(kMaxQubits) + "]");
    }
}

std::vector<double> running_sum(std::span<const double> probs) {
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    return cdf;
}

std::uint64_t draw_from_cdf(const std::vector<double>& cdf, Rng& rng) {
    // Scale by the total so rounding in the running sum never leaves a gap.
    const double u = rng.uniform() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto idx = static_cast<std::uint64_t>(it - cdf.begin());
    return std::min<std::uint64_t>(idx, cdf.size() - 1);
}

void apply_pauli_pair(QuantumState& state, const Gate& gate, std::uint8_t pair) {
    state.apply_pauli(static_cast<Pauli>(pair / 4), gate.q0);
    state.apply_pauli(static_cast<Pauli>(pair % 4), gate.q1);
}

}  // namespace

// ---------------------------------------------------------------- Circuit

Circuit::Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) { check_qubit_count(num_qubits); }

std::size_t Circuit::two_qubit_gate_count() const {
    return static_cast<std::size_t>(
        std::count_if(gates_.begin(), gates_.end(), [](const Gate& g) { return g.is_two_qubit(); }));
}

Circuit& Circuit::add(const Gate& gate) {
    if (gate.q0 >= num_qubits_ || (gate.is_two_qubit() && gate.q1 >= num_qubits_)) {
        throw std::invalid_argument("gate target out of range");
    }
    if (gate.is_two_qubit() && gate.q0 == gate.q1) throw std::invalid_argument("two-qubit gate targets must differ");
    gates_.push_back(gate);
    return *this;
}

Circuit& Circuit::append(const Circuit& other, std::size_t offset) {
    for (Gate g : other.gates()) {
        g.q0 += offset;
        if (g.is_two_qubit()) g.q1 += offset;
        add(g);
    }
    return *this;
}

// ----------------------------------------------------------- QuantumState

QuantumState::QuantumState(std::size_t num_qubits) : num_qubits_(num_qubits) {
    check_qubit_count(num_qubits);
    amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

QuantumState::QuantumState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 2 || !std::has_single_bit(amplitudes_.size())) {
        throw std::invalid_argument("amplitude vector length must be a power of two >= 2");
    }
    num_qubits_ = static_cast<std::size_t>(std::countr_zero(amplitudes_.size()));
    check_qubit_count(num_qubits_);
}

double QuantumState::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return s;
}

void QuantumState::apply_1q(std::size_t qubit, Complex u00, Complex u01, Complex u10, Complex u11) {
    const std::uint64_t m = mask(qubit);
    const std::size_t dim = amplitudes_.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & m) continue;
        const std::size_t j = i | m;
        const Complex a0 = amplitudes_[i];
        const Complex a1 = amplitudes_[j];
        amplitudes_[i] = u00 * a0 + u01 * a1;
        amplitudes_[j] = u10 * a0 + u11 * a1;
    }
}

void QuantumState::apply_cnot(std::size_t control, std::size_t target) {
    const std::uint64_t mc = mask(control);
    const std::uint64_t mt = mask(target);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & mc) && !(i & mt)) std::swap(amplitudes_[i], amplitudes_[i | mt]);
    }
}

void QuantumState::apply_rxx(std::size_t i, std::size_t j, double theta) {
    const std::uint64_t mi = mask(i);
    const std::uint64_t flip = mi | mask(j);
    const double c = std::cos(theta);
    const Complex is{0.0, std::sin(theta)};
    for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
        if (k & mi) continue;
        const std::size_t l = k ^ flip;
        const Complex a = amplitudes_[k];
        const Complex b = amplitudes_[l];
        amplitudes_[k] = c * a + is * b;
        amplitudes_[l] = c * b + is * a;
    }
}

void QuantumState::apply(const Gate& gate) {
    if (gate.q0 >= num_qubits_ || (gate.is_two_qubit() && gate.q1 >= num_qubits_)) {
        throw std::invalid_argument("gate target out of range");
    }
    switch (gate.kind) {
        case GateKind::H: {
            const double r = std::numbers::sqrt2 / 2.0;
            apply_1q(gate.q0, r, r, r, -r);
            break;
        }
        case GateKind::X:
            apply_1q(gate.q0, 0.0, 1.0, 1.0, 0.0);
            break;
        case GateKind::RZ: {
            const Complex e = std::polar(1.0, gate.angle);
            apply_1q(gate.q0, e, 0.0, 0.0, std::conj(e));
            break;
        }
        case GateKind::RX: {
            const double c = std::cos(gate.angle);
            const Complex is{0.0, std::sin(gate.angle)};
            apply_1q(gate.q0, c, is, is, c);
            break;
        }
        case GateKind::CNOT:
            apply_cnot(gate.q0, gate.q1);
            break;
        case GateKind::RXX:
            apply_rxx(gate.q0, gate.q1, gate.angle);
            break;
    }
}

void QuantumState::apply(const Circuit& circuit) {
    if (circuit.num_qubits() != num_qubits_) throw std::invalid_argument("circuit/state qubit count mismatch");
    for (const auto& g : circuit.gates()) apply(g);
}

void QuantumState::apply_pauli(Pauli p, std::size_t qubit) {
    switch (p) {
        case Pauli::I:
            break;
        case Pauli::X:
            apply_1q(qubit, 0.0, 1.0, 1.0, 0.0);
            break;
        case Pauli::Y:
            apply_1q(qubit, 0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0);
            break;
        case Pauli::Z:
            apply_1q(qubit, 1.0, 0.0, 0.0, -1.0);
            break;
    }
}

// ------------------------------------------------------------------ noise

void NoiseConfig::validate() const {
    if (!(p_depol >= 0.0 && p_depol <= 1.0)) throw std::invalid_argument("depolarizing probability must lie in [0, 1]");
}

// -------------------------------------------------------- free functions

QuantumState zero_state(std::size_t num_qubits) { return QuantumState(num_qubits); }

QuantumState apply_circuit(QuantumState state, const Circuit& circuit) {
    state.apply(circuit);
    return state;
}

std::vector<double> probabilities(const QuantumState& state) {
    std::vector<double> p(state.dimension());
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amps[i]);
    return p;
}

std::vector<std::uint64_t> sample_indices(std::span<const double> probs, std::size_t shots, Rng& rng) {
    if (shots == 0) throw std::invalid_argument("shots must be >= 1");
    if (probs.empty()) throw std::invalid_argument("empty probability vector");
    const auto cdf = running_sum(probs);
    std::vector<std::uint64_t> out(shots);
    for (auto& o : out) o = draw_from_cdf(cdf, rng);
    return out;
}

std::string to_bitstring(std::uint64_t index, std::size_t num_qubits) {
    std::string s(num_qubits, '0');
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if ((index >> (num_qubits - 1 - q)) & 1U) s[q] = '1';
    }
    return s;
}

std::map<std::string, std::size_t> sample_shots(const QuantumState& state, std::size_t shots, std::uint64_t seed) {
    Rng rng(seed);
    const auto probs = probabilities(state);
    std::map<std::string, std::size_t> counts;
    for (auto idx : sample_indices(probs, shots, rng)) ++counts[to_bitstring(idx, state.num_qubits())];
    return counts;
}

QuantumState apply_noisy_circuit(const Circuit& circuit, const NoiseConfig& noise, Rng& rng) {
    noise.validate();
    QuantumState state(circuit.num_qubits());
    for (const auto& g : circuit.gates()) {
        state.apply(g);
        if (g.is_two_qubit() && noise.enabled() && rng.uniform() < noise.p_depol) {
            apply_pauli_pair(state, g, static_cast<std::uint8_t>(1 + rng.below(15)));
        }
    }
    return state;
}

QuantumState apply_noisy_circuit(const Circuit& circuit, const NoiseConfig& noise, std::uint64_t seed) {
    Rng rng(seed);
    return apply_noisy_circuit(circuit, noise, rng);
}

// ----------------------------------------------------------- NoisySampler

NoisySampler::NoisySampler(Circuit circuit, NoiseConfig noise) : circuit_(std::move(circuit)), noise_(noise) {
    noise_.validate();
    const auto& gates = circuit_.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (gates[i].is_two_qubit()) two_qubit_positions_.push_back(static_cast<std::uint32_t>(i));
    }
    ideal_ = probabilities(apply_circuit(QuantumState(circuit_.num_qubits()), circuit_));
    ideal_cdf_ = running_sum(ideal_);
}

const std::vector<double>& NoisySampler::faulty_cdf(const std::vector<Fault>& faults) {
    if (auto it = cache_.find(faults); it != cache_.end()) return it->second;

    QuantumState state(circuit_.num_qubits());
    const auto& gates = circuit_.gates();
    std::size_t next = 0;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        state.apply(gates[i]);
        while (next < faults.size() && faults[next].gate == i) {
            apply_pauli_pair(state, gates[i], faults[next].pauli_pair);
            ++next;
        }
    }
    auto cdf = running_sum(probabilities(state));
    if (cache_.size() >= kMaxCachedFaultPatterns) cache_.erase(cache_.begin());
    return cache_.emplace(faults, std::move(cdf)).first->second;
}

std::vector<std::uint64_t> NoisySampler::sample(std::size_t shots, Rng& rng) {
    if (shots == 0) throw std::invalid_argument("shots must be >= 1");
    std::vector<std::uint64_t> out(shots);
    std::vector<Fault> faults;
    for (auto& o : out) {
        faults.clear();
        if (noise_.enabled()) {
            for (auto pos : two_qubit_positions_) {
                if (rng.uniform() < noise_.p_depol) {
                    faults.push_back({pos, static_cast<std::uint8_t>(1 + rng.below(15))});
                }
            }
        }
        o = faults.empty() ? draw_from_cdf(ideal_cdf_, rng) : draw_from_cdf(faulty_cdf(faults), rng);
    }
    return out;
}

}  // namespace qcopula
