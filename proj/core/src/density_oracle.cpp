// Density-matrix reference for the trajectory noise model. Gate matrices are
// written out from their definitions and embedded into the full space; no
// code is shared with the statevector kernels.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <array>
#include <cmath>
#include <stdexcept>

#include "qcopula/statevec.hpp"

namespace qcopula {
namespace {

using Mat = Eigen::MatrixXcd;

Mat pauli_matrix(int which) {
    Mat m(2, 2);
    switch (which) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

Mat local_matrix(const Gate& g) {
    const Complex i1{0.0, 1.0};
    Mat m;
    switch (g.kind) {
        case GateKind::H:
            m.resize(2, 2);
            m << 1, 1, 1, -1;
            m /= std::sqrt(2.0);
            break;
        case GateKind::X:
            m = pauli_matrix(1);
            break;
        case GateKind::RZ:  // exp(i t Z)
            m = (std::cos(g.angle) * pauli_matrix(0) + i1 * std::sin(g.angle) * pauli_matrix(3)).eval();
            break;
        case GateKind::RX:  // exp(i t X)
            m = (std::cos(g.angle) * pauli_matrix(0) + i1 * std::sin(g.angle) * pauli_matrix(1)).eval();
            break;
        case GateKind::CNOT:
            m = Mat::Zero(4, 4);
            m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
            break;
        case GateKind::RXX: {  // exp(i t X (x) X)
            const Mat xx = Eigen::kroneckerProduct(pauli_matrix(1), pauli_matrix(1));
            m = std::cos(g.angle) * Mat::Identity(4, 4) + i1 * std::sin(g.angle) * xx;
            break;
        }
    }
    return m;
}

// Embeds a 2x2 (targets = {a}) or 4x4 (targets = {a, b}, a is the high bit of
// the local index) matrix into the 2^n space with qubit 0 as the MSB.
Mat embed(const Mat& local, std::size_t n, std::size_t a, std::size_t b, bool two) {
    const std::size_t dim = std::size_t{1} << n;
    const auto bit = [n](std::size_t idx, std::size_t q) { return (idx >> (n - 1 - q)) & 1U; };
    std::size_t target_mask = std::size_t{1} << (n - 1 - a);
    if (two) target_mask |= std::size_t{1} << (n - 1 - b);
    Mat full = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~target_mask) != (c & ~target_mask)) continue;
            const std::size_t lr = two ? (bit(r, a) << 1 | bit(r, b)) : bit(r, a);
            const std::size_t lc = two ? (bit(c, a) << 1 | bit(c, b)) : bit(c, a);
            full(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                local(static_cast<Eigen::Index>(lr), static_cast<Eigen::Index>(lc));
        }
    }
    return full;
}

}  // namespace

std::vector<double> density_oracle_probabilities(const Circuit& circuit, const NoiseConfig& noise) {
    noise.validate();
    const std::size_t n = circuit.num_qubits();
    if (n > kMaxOracleQubits) throw std::invalid_argument("density oracle limited to 6 qubits");
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);

    Mat rho = Mat::Zero(dim, dim);
    rho(0, 0) = 1.0;

    for (const auto& g : circuit.gates()) {
        const Mat u = embed(local_matrix(g), n, g.q0, g.q1, g.is_two_qubit());
        rho = (u * rho * u.adjoint()).eval();
        if (!g.is_two_qubit() || !noise.enabled()) continue;

        Mat mixed = Mat::Zero(dim, dim);
        for (int pair = 1; pair < 16; ++pair) {
            const Mat local = Eigen::kroneckerProduct(pauli_matrix(pair / 4), pauli_matrix(pair % 4));
            const Mat p = embed(local, n, g.q0, g.q1, true);
            mixed += p * rho * p.adjoint();
        }
        rho = ((1.0 - noise.p_depol) * rho + (noise.p_depol / 15.0) * mixed).eval();
    }

    std::vector<double> probs(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) probs[static_cast<std::size_t>(i)] = rho(i, i).real();
    return probs;
}

}  // namespace qcopula
