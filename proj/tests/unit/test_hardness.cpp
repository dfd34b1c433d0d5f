#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "oracles.hpp"
#include "qcopula/hardness.hpp"

using namespace qcopula;

namespace {

// U_A applied to |0...0> directly on n qubits: RX(M_k) then RXX(J_kl), in
// the order given by `pairs`.
std::vector<double> direct_ua(const IqpInstance& inst, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    Circuit c(inst.n);
    for (std::size_t k = 0; k < inst.n; ++k) c.add(Gate::rx(k, inst.fields[k]));
    for (const auto& [i, j] : pairs) c.add(Gate::rxx(i, j, inst.couplings(i, j)));
    return probabilities(apply_circuit(zero_state(inst.n), c));
}

std::vector<std::pair<std::size_t, std::size_t>> all_pairs(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> p;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) p.emplace_back(i, j);
    return p;
}

}  // namespace

TEST(Iqp, TrivialInstanceIsPointMass) {
    IqpInstance inst{3, Matrix(3, 3), std::vector<double>(3, 0.0)};
    const auto p = iqp_distribution(inst);
    EXPECT_NEAR(p[0], 1.0, 1e-14);
    EXPECT_NEAR(verify_iqp_reduction(inst), 0.0, 1e-14);
}

TEST(Iqp, SingleQubitField) {
    IqpInstance inst{1, Matrix(1, 1), {std::numbers::pi / 4}};
    const auto p = iqp_distribution(inst);
    EXPECT_NEAR(p[0], 0.5, 1e-14);
    EXPECT_NEAR(p[1], 0.5, 1e-14);
}

TEST(Iqp, Normalised) {
    Rng rng(1);
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto p = iqp_distribution(random_iqp_instance(n, rng));
        EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-10);
    }
}

TEST(Iqp, DenseOracle) {
    // H^n exp(iD) H^n built from dense Pauli strings.
    Rng rng(2);
    const auto inst = random_iqp_instance(3, rng);
    const auto h = oracle::Dense{{M_SQRT1_2, M_SQRT1_2}, {M_SQRT1_2, -M_SQRT1_2}};
    const auto hn = oracle::kron_all({h, h, h});
    oracle::Dense u = hn;
    for (std::size_t k = 0; k < 3; ++k) {
        std::string z = "III";
        z[k] = 'Z';
        u = oracle::multiply(oracle::exp_i_pauli(oracle::pauli_string(z), inst.fields[k]), u);
        for (std::size_t l = k + 1; l < 3; ++l) {
            std::string zz = "III";
            zz[k] = zz[l] = 'Z';
            u = oracle::multiply(oracle::exp_i_pauli(oracle::pauli_string(zz), inst.couplings(k, l)), u);
        }
    }
    u = oracle::multiply(hn, u);
    const auto expect = oracle::born(u);
    const auto got = iqp_distribution(inst);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(got[i], expect[i], 1e-12);
}

TEST(Reduction, ZeroAnglesPointMass) {
    const QopulaSpec spec{2, 3, 1, 0};
    const auto c = qopula_conditional(spec, std::vector<double>(24, 0.0));
    EXPECT_NEAR(c[0], 1.0, 1e-14);
}

TEST(Reduction, ConditionalMatchesDirectSimulation) {
    Rng rng(3);
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto inst = random_iqp_instance(n, rng);
        const QopulaSpec spec{2, n, 1, 0};
        const auto cond = qopula_conditional(spec, iqp_reduction_parameters(inst));
        const auto direct = direct_ua(inst, all_pairs(n));
        for (std::size_t z = 0; z < cond.size(); ++z) EXPECT_NEAR(cond[z], direct[z], 1e-12);
        EXPECT_NEAR(conditioning_probability(spec, iqp_reduction_parameters(inst)), 1.0 / (1u << n), 1e-12);
    }
}

TEST(Reduction, MinimalEntanglingCase) {
    Matrix j(2, 2);
    j(0, 1) = j(1, 0) = std::numbers::pi / 8;
    EXPECT_LE(verify_iqp_reduction({2, j, {0.0, 0.0}}), 1e-10);
}

TEST(Reduction, RandomInstances) {
    Rng rng(4);
    for (std::size_t n : {2u, 3u, 4u}) {
        for (int t = 0; t < 30; ++t) EXPECT_LE(verify_iqp_reduction(random_iqp_instance(n, rng)), 1e-10);
    }
}

TEST(Reduction, GateOrderIrrelevant) {
    Rng rng(5);
    const auto inst = random_iqp_instance(4, rng);
    auto pairs = all_pairs(4);
    const auto base = direct_ua(inst, pairs);
    for (int t = 0; t < 5; ++t) {
        shuffle(pairs.begin(), pairs.end(), rng);
        const auto p = direct_ua(inst, pairs);
        for (std::size_t z = 0; z < p.size(); ++z) EXPECT_NEAR(p[z], base[z], 1e-12);
    }
}

TEST(Reduction, Preconditions) {
    const QopulaSpec three{3, 2, 1, 0};
    EXPECT_THROW(qopula_conditional(three, std::vector<double>(param_count(three), 0.0)), std::invalid_argument);
    const QopulaSpec spec{2, 2, 1, 0};
    std::vector<double> theta(param_count(spec), 0.0);
    theta.back() = 0.3;  // a register-B angle
    EXPECT_THROW(qopula_conditional(spec, theta), std::invalid_argument);
    IqpInstance bad{2, Matrix(2, 2), {0.0}};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}
