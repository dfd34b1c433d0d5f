#pragma once

// Small dense feed-forward networks with hand-written backpropagation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qcopula/matrix.hpp"

namespace qcopula {

enum class Activation { Identity, ReLU, LeakyReLU, Sigmoid };

struct BatchNorm {
    std::vector<double> gamma;
    std::vector<double> beta;
    std::vector<double> running_mean;
    std::vector<double> running_var;
    double momentum = 0.1;
    double epsilon = 1e-5;

    explicit BatchNorm(std::size_t width = 0)
        : gamma(width, 1.0), beta(width, 0.0), running_mean(width, 0.0), running_var(width, 1.0) {}
};

struct DenseLayer {
    Matrix weights;  // out x in
    std::vector<double> biases;
    Activation activation = Activation::Identity;
    double leaky_slope = 0.01;
    std::optional<BatchNorm> batch_norm;

    std::size_t in() const { return weights.cols(); }
    std::size_t out() const { return weights.rows(); }
    std::size_t parameter_count() const;
};

struct LayerSpec {
    std::size_t in;
    std::size_t out;
    Activation activation;
    bool batch_norm = false;
};

class Mlp {
public:
    Mlp() = default;
    explicit Mlp(std::vector<DenseLayer> layers);

    const std::vector<DenseLayer>& layers() const { return layers_; }
    std::vector<DenseLayer>& layers() { return layers_; }
    std::size_t input_dim() const { return layers_.front().in(); }
    std::size_t output_dim() const { return layers_.back().out(); }

    /// Trainable parameters only (weights, biases, gamma, beta).
    std::size_t parameter_count() const;
    /// Flat layout per layer: weights row-major, biases, then gamma and beta.
    std::vector<double> parameters() const;
    void set_parameters(std::span<const double> flat);

private:
    std::vector<DenseLayer> layers_;
};

/// Weights uniform in [-sqrt(1/fan_in), sqrt(1/fan_in)], biases zero,
/// batch-norm gamma 1 and beta 0. Deterministic per seed.
Mlp init_mlp(std::span<const LayerSpec> architecture, std::uint64_t seed);

/// 2 -> 32 (LeakyReLU) -> 1 (Sigmoid); 129 parameters.
std::vector<LayerSpec> discriminator_architecture();
/// 6 -> 2 (batch norm, ReLU) -> 2 (Sigmoid); 24 parameters.
std::vector<LayerSpec> classical_generator_architecture();

enum class Mode { Train, Eval };

struct LayerCache {
    Matrix input;
    Matrix normalized;  // x-hat, only with batch norm
    std::vector<double> inv_std;
    Matrix pre_activation;
    Matrix output;
};

struct ForwardCache {
    Mode mode = Mode::Eval;
    std::vector<LayerCache> layers;
};

struct ForwardResult {
    Matrix output;
    ForwardCache cache;
};

/// Training mode normalises with batch statistics and updates the running
/// statistics; evaluation mode uses the running statistics and leaves the
/// network untouched.
ForwardResult forward(Mlp& net, const Matrix& batch, Mode mode);
Matrix predict(const Mlp& net, const Matrix& batch);

struct Gradients {
    std::vector<double> params;  // same layout as Mlp::parameters()
    Matrix input;                // d loss / d batch
};

/// `upstream` is d loss / d output. Throws std::logic_error when the cache
/// does not come from a forward pass of this network.
Gradients backward(const Mlp& net, const ForwardCache& cache, const Matrix& upstream);

}  // namespace qcopula
