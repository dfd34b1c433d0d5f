#pragma once

// Constructive check that post-selecting a two-register qopula circuit on
// register B = 0...0, with U_B trivial and the RZ angles of U_A zeroed,
// reproduces the output distribution of an IQP circuit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qcopula/matrix.hpp"
#include "qcopula/qopula.hpp"

namespace qcopula {

/// D = sum_{k<l} J_kl Z_k Z_l + sum_k M_k Z_k; IQP circuit H^n exp(iD) H^n.
struct IqpInstance {
    std::size_t n = 0;
    Matrix couplings;            // J, symmetric with zero diagonal
    std::vector<double> fields;  // M

    void validate() const;
};

IqpInstance random_iqp_instance(std::size_t n, Rng& rng);

/// |<z| H^n exp(iD) H^n |0^n>|^2, evaluated with the diagonal phase in the
/// computational basis. n <= 10.
std::vector<double> iqp_distribution(const IqpInstance& instance);

/// Conditional distribution of register A given register B measured as all
/// zeros, from the full 2n-qubit statevector. Requires d = 2 and every
/// register-B angle equal to zero; throws if the conditioning event has zero
/// probability.
std::vector<double> qopula_conditional(const QopulaSpec& spec, std::span<const double> theta);

/// Probability of register B reading all zeros.
double conditioning_probability(const QopulaSpec& spec, std::span<const double> theta);

/// Qopula angles realising the reduction: one layer, register-A RZ = 0,
/// RX = M, RXX(i, j) = J_ij for i < j, register B all zero.
ParamVector iqp_reduction_parameters(const IqpInstance& instance);

/// max_z |qopula_conditional(z) - iqp_distribution(z)|. n <= 8.
double verify_iqp_reduction(const IqpInstance& instance);

}  // namespace qcopula
