#pragma once

// The qopula ansatz: a GHZ/Bell entangler across d registers of n qubits,
// followed by an independent layered local unitary on every register.
// Because each register starts maximally mixed and only local unitaries
// follow, every register's measurement marginal is exactly uniform.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qcopula/matrix.hpp"
#include "qcopula/random.hpp"
#include "qcopula/statevec.hpp"

namespace qcopula {

using ParamVector = std::vector<double>;

struct QopulaSpec {
    std::size_t num_vars = 2;             // d, number of registers
    std::size_t qubits_per_register = 3;  // n
    std::size_t layers = 1;               // L
    std::size_t pad_bits = 20;            // random less-significant bits per variable

    void validate() const;
    std::size_t total_qubits() const { return num_vars * qubits_per_register; }
    std::size_t params_per_layer() const;
    std::size_t params_per_register() const { return layers * params_per_layer(); }

    friend bool operator==(const QopulaSpec&, const QopulaSpec&) = default;
};

/// d * L * (3n + n(n-1)/2).
std::size_t param_count(const QopulaSpec& spec);

/// Flat position of a parameter. Layout is register-major, then layer, then
/// n x RZ, n x RX, n x RZ, then RXX over pairs (i < j) in lexicographic order.
struct ParamLayout {
    std::size_t n;
    std::size_t layers;

    std::size_t per_layer() const { return 3 * n + n * (n - 1) / 2; }
    std::size_t register_offset(std::size_t reg) const { return reg * layers * per_layer(); }
    std::size_t first_rz(std::size_t layer, std::size_t q) const { return layer * per_layer() + q; }
    std::size_t rx(std::size_t layer, std::size_t q) const { return layer * per_layer() + n + q; }
    std::size_t second_rz(std::size_t layer, std::size_t q) const { return layer * per_layer() + 2 * n + q; }
    std::size_t rxx(std::size_t layer, std::size_t i, std::size_t j) const;
};

/// H on qubit j of register 0, then CNOT fan-out to qubit j of every other
/// register, for each j < n. Yields n GHZ states spanning the d registers.
Circuit entangler_circuit(std::size_t d, std::size_t n);

/// L layers of RZ, RX, RZ on every qubit followed by RXX on every pair.
/// Throws std::invalid_argument on a parameter-length mismatch.
Circuit local_ansatz_circuit(std::size_t n, std::size_t layers, std::span<const double> register_params);

/// Entangler followed by each register's local ansatz on its own qubits.
Circuit assemble(const QopulaSpec& spec, std::span<const double> theta);

/// Exact Born distribution of the assembled circuit.
std::vector<double> exact_distribution(const QopulaSpec& spec, std::span<const double> theta);

/// n-bit value of register `reg` inside a full basis index.
std::uint64_t register_value(std::uint64_t basis_index, const QopulaSpec& spec, std::size_t reg);

/// Marginal distribution of every register from a full distribution.
std::vector<std::vector<double>> register_marginals(std::span<const double> probs, const QopulaSpec& spec);

/// Bin-centre encoding: bits (MSB first) read as integer k of width w map to
/// (k + 0.5) / 2^w. Width 1..60; the result lies in the open interval (0, 1).
double bits_to_unit(std::span<const std::uint8_t> bits);
double index_to_unit(std::uint64_t k, std::size_t width);

/// Measures the circuit `shots` times and maps every register to (0, 1),
/// after appending `pad_bits` uniform random bits below the measured ones.
/// Returns a shots x d matrix.
Matrix sample_copula_points(const QopulaSpec& spec, std::span<const double> theta, std::size_t shots, Rng& rng,
                            const NoiseConfig& noise = {});
Matrix sample_copula_points(const QopulaSpec& spec, std::span<const double> theta, std::size_t shots,
                            std::uint64_t seed, const NoiseConfig& noise = {});

/// Maps measured basis indices to points, appending padding bits from `rng`.
Matrix indices_to_points(std::span<const std::uint64_t> indices, const QopulaSpec& spec, Rng& rng);

/// Seeds a larger ansatz from a trained smaller one: a gate present in the
/// smaller system (same register, layer and qubit indices) keeps its angle,
/// every new gate starts at 0.
ParamVector transfer_parameters(const QopulaSpec& from, std::span<const double> theta, const QopulaSpec& to);

/// Uniform random angles in [0, 2 pi).
ParamVector random_parameters(const QopulaSpec& spec, Rng& rng);

}  // namespace qcopula
