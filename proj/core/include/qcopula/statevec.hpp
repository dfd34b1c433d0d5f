#pragma once

// Dense statevector simulation for the gate set used by the qopula ansatz.
//
// Conventions (fixed for the whole library):
//   * qubit 0 is the most significant bit of a basis index and the first
//     character of a bitstring;
//   * RZ(t) = exp(i t Z), RX(t) = exp(i t X), RXX(t) = exp(i t X_i X_j),
//     with no factor of one half.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qcopula/random.hpp"

namespace qcopula {

inline constexpr std::size_t kMaxQubits = 24;
inline constexpr std::size_t kMaxOracleQubits = 6;

using Complex = std::complex<double>;

enum class GateKind { H, X, CNOT, RZ, RX, RXX };

struct Gate {
    GateKind kind;
    std::size_t q0 = 0;
    std::size_t q1 = 0;  // second target (CNOT target, RXX partner)
    double angle = 0.0;

    static Gate h(std::size_t q) { return {GateKind::H, q, 0, 0.0}; }
    static Gate x(std::size_t q) { return {GateKind::X, q, 0, 0.0}; }
    static Gate cnot(std::size_t control, std::size_t target) { return {GateKind::CNOT, control, target, 0.0}; }
    static Gate rz(std::size_t q, double theta) { return {GateKind::RZ, q, 0, theta}; }
    static Gate rx(std::size_t q, double theta) { return {GateKind::RX, q, 0, theta}; }
    static Gate rxx(std::size_t i, std::size_t j, double theta) { return {GateKind::RXX, i, j, theta}; }

    bool is_two_qubit() const { return kind == GateKind::CNOT || kind == GateKind::RXX; }

    friend bool operator==(const Gate&, const Gate&) = default;
};

class Circuit {
public:
    explicit Circuit(std::size_t num_qubits);

    std::size_t num_qubits() const { return num_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    std::size_t two_qubit_gate_count() const;

    /// Throws std::invalid_argument if a target is out of range or repeated.
    Circuit& add(const Gate& gate);
    /// Appends every gate of `other`, shifting qubit indices by `offset`.
    Circuit& append(const Circuit& other, std::size_t offset = 0);

private:
    std::size_t num_qubits_;
    std::vector<Gate> gates_;
};

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

class QuantumState {
public:
    /// |0...0> on `num_qubits` qubits; 1 <= num_qubits <= kMaxQubits.
    explicit QuantumState(std::size_t num_qubits);
    /// Wraps explicit amplitudes; the length must be a power of two.
    explicit QuantumState(std::vector<Complex> amplitudes);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::vector<Complex>& mutable_amplitudes() { return amplitudes_; }

    void apply(const Gate& gate);
    void apply(const Circuit& circuit);
    void apply_pauli(Pauli p, std::size_t qubit);

    double norm_squared() const;

private:
    std::uint64_t mask(std::size_t qubit) const { return std::uint64_t{1} << (num_qubits_ - 1 - qubit); }
    void apply_1q(std::size_t qubit, Complex u00, Complex u01, Complex u10, Complex u11);
    void apply_cnot(std::size_t control, std::size_t target);
    void apply_rxx(std::size_t i, std::size_t j, double theta);

    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

struct NoiseConfig {
    /// Probability of a two-qubit depolarizing event after each two-qubit gate.
    double p_depol = 0.0;

    void validate() const;
    bool enabled() const { return p_depol > 0.0; }
};

QuantumState zero_state(std::size_t num_qubits);

/// Throws std::invalid_argument when the qubit counts differ.
QuantumState apply_circuit(QuantumState state, const Circuit& circuit);

std::vector<double> probabilities(const QuantumState& state);

/// Draws `shots` basis indices from a probability vector (inverse CDF on the
/// running sum). Order follows the draw order of `rng`.
std::vector<std::uint64_t> sample_indices(std::span<const double> probs, std::size_t shots, Rng& rng);

/// Bitstring of `index` on `num_qubits` characters, qubit 0 first.
std::string to_bitstring(std::uint64_t index, std::size_t num_qubits);

/// Born-rule sampling; returns bitstring -> count. Throws on shots == 0.
std::map<std::string, std::size_t> sample_shots(const QuantumState& state, std::size_t shots, std::uint64_t seed);

/// One Pauli trajectory of `circuit` from |0...0>: after every two-qubit gate,
/// with probability p one of the 15 non-identity two-qubit Paulis is applied
/// to its targets, chosen uniformly.
QuantumState apply_noisy_circuit(const Circuit& circuit, const NoiseConfig& noise, std::uint64_t seed);
QuantumState apply_noisy_circuit(const Circuit& circuit, const NoiseConfig& noise, Rng& rng);

/// Samples measurement outcomes of a circuit under trajectory noise, one
/// independent trajectory per shot. Output distributions of fault patterns
/// are cached, so the common fault-free case costs one simulation.
class NoisySampler {
public:
    NoisySampler(Circuit circuit, NoiseConfig noise);

    std::vector<std::uint64_t> sample(std::size_t shots, Rng& rng);

    /// Exact output distribution when noise is off.
    const std::vector<double>& ideal_probabilities() const { return ideal_; }

private:
    struct Fault {
        std::uint32_t gate;
        std::uint8_t pauli_pair;  // 1..15, first target = pair / 4, second = pair % 4
        auto operator<=>(const Fault&) const = default;
    };

    const std::vector<double>& faulty_cdf(const std::vector<Fault>& faults);

    Circuit circuit_;
    NoiseConfig noise_;
    std::vector<std::uint32_t> two_qubit_positions_;
    std::vector<double> ideal_;
    std::vector<double> ideal_cdf_;
    std::map<std::vector<Fault>, std::vector<double>> cache_;  // fault pattern -> output CDF
};

/// Exact outcome probabilities under the two-qubit depolarizing channel
/// D(rho) = (1-p) rho + p/15 sum_{P != II} P rho P after each two-qubit gate,
/// computed with an explicit density matrix. Limited to kMaxOracleQubits.
std::vector<double> density_oracle_probabilities(const Circuit& circuit, const NoiseConfig& noise);

}  // namespace qcopula
