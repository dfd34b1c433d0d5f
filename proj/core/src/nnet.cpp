#include "qcopula/nnet.hpp"

#include <cmath>
#include <stdexcept>

#include "qcopula/random.hpp"

namespace qcopula {
namespace {

double activate(Activation a, double x, double slope) {
    switch (a) {
        case Activation::Identity: return x;
        case Activation::ReLU: return x > 0.0 ? x : 0.0;
        case Activation::LeakyReLU: return x > 0.0 ? x : slope * x;
        case Activation::Sigmoid:
            // Split on sign so exp never overflows.
            if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
            {
                const double e = std::exp(x);
                return e / (1.0 + e);
            }
    }
    return x;
}

// Derivative expressed through the pre-activation z and the output y.
double activation_grad(Activation a, double z, double y, double slope) {
    switch (a) {
        case Activation::Identity: return 1.0;
        case Activation::ReLU: return z > 0.0 ? 1.0 : 0.0;
        case Activation::LeakyReLU: return z > 0.0 ? 1.0 : slope;
        case Activation::Sigmoid: return y * (1.0 - y);
    }
    return 1.0;
}

}  // namespace

std::size_t DenseLayer::parameter_count() const {
    return weights.rows() * weights.cols() + biases.size() + (batch_norm ? 2 * out() : 0);
}

Mlp::Mlp(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw std::invalid_argument("Mlp needs at least one layer");
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        const auto& l = layers_[i];
        if (l.biases.size() != l.out()) throw std::invalid_argument("bias size does not match layer width");
        if (l.batch_norm && l.batch_norm->gamma.size() != l.out()) {
            throw std::invalid_argument("batch norm size does not match layer width");
        }
        if (i > 0 && layers_[i - 1].out() != l.in()) throw std::invalid_argument("adjacent layer sizes do not compose");
    }
}

std::size_t Mlp::parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers_) n += l.parameter_count();
    return n;
}

std::vector<double> Mlp::parameters() const {
    std::vector<double> flat;
    flat.reserve(parameter_count());
    for (const auto& l : layers_) {
        flat.insert(flat.end(), l.weights.data().begin(), l.weights.data().end());
        flat.insert(flat.end(), l.biases.begin(), l.biases.end());
        if (l.batch_norm) {
            flat.insert(flat.end(), l.batch_norm->gamma.begin(), l.batch_norm->gamma.end());
            flat.insert(flat.end(), l.batch_norm->beta.begin(), l.batch_norm->beta.end());
        }
    }
    return flat;
}

void Mlp::set_parameters(std::span<const double> flat) {
    if (flat.size() != parameter_count()) throw std::invalid_argument("parameter vector size mismatch");
    auto it = flat.begin();
    const auto take = [&it](auto& dst) {
        std::copy(it, it + static_cast<std::ptrdiff_t>(dst.size()), dst.begin());
        it += static_cast<std::ptrdiff_t>(dst.size());
    };
    for (auto& l : layers_) {
        take(l.weights.data());
        take(l.biases);
        if (l.batch_norm) {
            take(l.batch_norm->gamma);
            take(l.batch_norm->beta);
        }
    }
}

Mlp init_mlp(std::span<const LayerSpec> architecture, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<DenseLayer> layers;
    for (const auto& spec : architecture) {
        DenseLayer l;
        l.weights = Matrix(spec.out, spec.in);
        const double bound = std::sqrt(1.0 / static_cast<double>(spec.in));
        for (auto& w : l.weights.data()) w = rng.uniform(-bound, bound);
        l.biases.assign(spec.out, 0.0);
        l.activation = spec.activation;
        if (spec.batch_norm) l.batch_norm = BatchNorm(spec.out);
        layers.push_back(std::move(l));
    }
    return Mlp(std::move(layers));
}

std::vector<LayerSpec> discriminator_architecture() {
    return {{2, 32, Activation::LeakyReLU, false}, {32, 1, Activation::Sigmoid, false}};
}

std::vector<LayerSpec> classical_generator_architecture() {
    return {{6, 2, Activation::ReLU, true}, {2, 2, Activation::Sigmoid, false}};
}

ForwardResult forward(Mlp& net, const Matrix& batch, Mode mode) {
    if (batch.cols() != net.input_dim()) throw std::invalid_argument("input width does not match the network");
    ForwardResult result;
    result.cache.mode = mode;
    Matrix x = batch;
    const std::size_t m = batch.rows();
    for (auto& layer : net.layers()) {
        LayerCache c;
        const std::size_t in = layer.in();
        const std::size_t out = layer.out();
        Matrix z(m, out);
        for (std::size_t r = 0; r < m; ++r) {
            const auto xr = x.row(r);
            for (std::size_t o = 0; o < out; ++o) {
                const auto w = layer.weights.row(o);
                double s = layer.biases[o];
                for (std::size_t i = 0; i < in; ++i) s += w[i] * xr[i];
                z(r, o) = s;
            }
        }
        if (layer.batch_norm) {
            auto& bn = *layer.batch_norm;
            c.normalized = Matrix(m, out);
            c.inv_std.assign(out, 0.0);
            for (std::size_t o = 0; o < out; ++o) {
                double mean = 0.0;
                double var = 0.0;
                if (mode == Mode::Train) {
                    if (m == 0) throw std::invalid_argument("batch norm needs a non-empty batch");
                    for (std::size_t r = 0; r < m; ++r) mean += z(r, o);
                    mean /= static_cast<double>(m);
                    for (std::size_t r = 0; r < m; ++r) var += (z(r, o) - mean) * (z(r, o) - mean);
                    const double biased = var / static_cast<double>(m);
                    const double unbiased = m > 1 ? var / static_cast<double>(m - 1) : biased;
                    bn.running_mean[o] = (1.0 - bn.momentum) * bn.running_mean[o] + bn.momentum * mean;
                    bn.running_var[o] = (1.0 - bn.momentum) * bn.running_var[o] + bn.momentum * unbiased;
                    var = biased;
                } else {
                    mean = bn.running_mean[o];
                    var = bn.running_var[o];
                }
                const double inv = 1.0 / std::sqrt(var + bn.epsilon);
                c.inv_std[o] = inv;
                for (std::size_t r = 0; r < m; ++r) {
                    const double xh = (z(r, o) - mean) * inv;
                    c.normalized(r, o) = xh;
                    z(r, o) = bn.gamma[o] * xh + bn.beta[o];
                }
            }
        }
        Matrix a(m, out);
        for (std::size_t k = 0; k < a.data().size(); ++k) {
            a.data()[k] = activate(layer.activation, z.data()[k], layer.leaky_slope);
        }
        c.input = std::move(x);
        c.pre_activation = std::move(z);
        c.output = a;
        x = std::move(a);
        result.cache.layers.push_back(std::move(c));
    }
    result.output = std::move(x);
    return result;
}

Matrix predict(const Mlp& net, const Matrix& batch) {
    Mlp copy = net;  // eval mode never mutates, but forward() takes a mutable net
    return forward(copy, batch, Mode::Eval).output;
}

Gradients backward(const Mlp& net, const ForwardCache& cache, const Matrix& upstream) {
    const auto& layers = net.layers();
    if (cache.layers.size() != layers.size()) throw std::logic_error("backward called without a matching forward cache");
    const std::size_t m = upstream.rows();
    if (upstream.cols() != net.output_dim() || cache.layers.back().output.rows() != m) {
        throw std::invalid_argument("upstream gradient shape does not match the forward pass");
    }
    for (std::size_t li = 0; li < layers.size(); ++li) {
        const auto& c = cache.layers[li];
        const auto& l = layers[li];
        const bool bn_ok = !l.batch_norm || (c.normalized.rows() == m && c.inv_std.size() == l.out());
        if (c.input.cols() != l.in() || c.input.rows() != m || c.output.cols() != l.out() ||
            c.pre_activation.cols() != l.out() || c.output.rows() != m || !bn_ok) {
            throw std::logic_error("backward called without a matching forward cache");
        }
    }

    std::vector<std::vector<double>> per_layer(layers.size());
    Matrix grad = upstream;  // d loss / d layer output
    for (std::size_t li = layers.size(); li-- > 0;) {
        const auto& layer = layers[li];
        const auto& c = cache.layers[li];
        const std::size_t in = layer.in();
        const std::size_t out = layer.out();

        Matrix dz(m, out);
        for (std::size_t k = 0; k < dz.data().size(); ++k) {
            dz.data()[k] = grad.data()[k] * activation_grad(layer.activation, c.pre_activation.data()[k],
                                                            c.output.data()[k], layer.leaky_slope);
        }

        std::vector<double> dgamma;
        std::vector<double> dbeta;
        if (layer.batch_norm) {
            const auto& bn = *layer.batch_norm;
            dgamma.assign(out, 0.0);
            dbeta.assign(out, 0.0);
            const double md = static_cast<double>(m);
            for (std::size_t o = 0; o < out; ++o) {
                double sum_dxh = 0.0;
                double sum_dxh_xh = 0.0;
                for (std::size_t r = 0; r < m; ++r) {
                    dgamma[o] += dz(r, o) * c.normalized(r, o);
                    dbeta[o] += dz(r, o);
                    const double dxh = dz(r, o) * bn.gamma[o];
                    sum_dxh += dxh;
                    sum_dxh_xh += dxh * c.normalized(r, o);
                }
                for (std::size_t r = 0; r < m; ++r) {
                    const double dxh = dz(r, o) * bn.gamma[o];
                    if (cache.mode == Mode::Train) {
                        dz(r, o) = c.inv_std[o] / md * (md * dxh - sum_dxh - c.normalized(r, o) * sum_dxh_xh);
                    } else {
                        dz(r, o) = dxh * c.inv_std[o];
                    }
                }
            }
        }

        std::vector<double> dw(out * in, 0.0);
        std::vector<double> db(out, 0.0);
        Matrix dx(m, in);
        for (std::size_t r = 0; r < m; ++r) {
            const auto xr = c.input.row(r);
            auto dxr = dx.row(r);
            for (std::size_t o = 0; o < out; ++o) {
                const double g = dz(r, o);
                if (g == 0.0) continue;
                db[o] += g;
                const auto w = layer.weights.row(o);
                double* dwo = dw.data() + o * in;
                for (std::size_t i = 0; i < in; ++i) {
                    dwo[i] += g * xr[i];
                    dxr[i] += g * w[i];
                }
            }
        }

        auto& flat = per_layer[li];
        flat = std::move(dw);
        flat.insert(flat.end(), db.begin(), db.end());
        flat.insert(flat.end(), dgamma.begin(), dgamma.end());
        flat.insert(flat.end(), dbeta.begin(), dbeta.end());
        grad = std::move(dx);
    }

    Gradients g;
    for (auto& p : per_layer) g.params.insert(g.params.end(), p.begin(), p.end());
    g.input = std::move(grad);
    return g;
}

}  // namespace qcopula
