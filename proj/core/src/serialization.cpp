#include "qcopula/serialization.hpp"

#include <json.hpp>
#include <cmath>
#include <stdexcept>

namespace qcopula {
namespace {

using json = nlohmann::ordered_json;

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

template <typename T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing JSON field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad JSON field '") + key + "': " + e.what());
    }
}

const char* activation_name(Activation a) {
    switch (a) {
        case Activation::Identity: return "identity";
        case Activation::ReLU: return "relu";
        case Activation::LeakyReLU: return "leaky_relu";
        case Activation::Sigmoid: return "sigmoid";
    }
    return "identity";
}

Activation activation_from_name(const std::string& s) {
    if (s == "identity") return Activation::Identity;
    if (s == "relu") return Activation::ReLU;
    if (s == "leaky_relu") return Activation::LeakyReLU;
    if (s == "sigmoid") return Activation::Sigmoid;
    throw std::invalid_argument("unknown activation '" + s + "'");
}

}  // namespace

std::string qopula_to_json(const QopulaSpec& spec, std::span<const double> theta) {
    json j;
    j["d"] = spec.num_vars;
    j["n"] = spec.qubits_per_register;
    j["layers"] = spec.layers;
    j["pad_bits"] = spec.pad_bits;
    j["theta"] = std::vector<double>(theta.begin(), theta.end());
    return j.dump();
}

QopulaCheckpoint qopula_from_json(const std::string& text) {
    const json j = parse(text);
    QopulaCheckpoint c;
    c.spec.num_vars = field<std::size_t>(j, "d");
    c.spec.qubits_per_register = field<std::size_t>(j, "n");
    c.spec.layers = field<std::size_t>(j, "layers");
    c.spec.pad_bits = field<std::size_t>(j, "pad_bits");
    c.theta = field<std::vector<double>>(j, "theta");
    c.spec.validate();
    if (c.theta.size() != param_count(c.spec)) throw std::invalid_argument("theta length does not match the spec");
    return c;
}

std::string mlp_to_json(const Mlp& net) {
    json layers = json::array();
    for (const auto& l : net.layers()) {
        json jl;
        jl["in"] = l.in();
        jl["out"] = l.out();
        jl["activation"] = activation_name(l.activation);
        jl["leaky_slope"] = l.leaky_slope;
        jl["weights"] = l.weights.data();
        jl["biases"] = l.biases;
        if (l.batch_norm) {
            const auto& bn = *l.batch_norm;
            jl["batch_norm"] = {{"gamma", bn.gamma},           {"beta", bn.beta},
                                {"running_mean", bn.running_mean}, {"running_var", bn.running_var},
                                {"momentum", bn.momentum},     {"epsilon", bn.epsilon}};
        }
        layers.push_back(std::move(jl));
    }
    json j;
    j["layers"] = std::move(layers);
    return j.dump();
}

Mlp mlp_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.contains("layers") || !j["layers"].is_array()) throw std::invalid_argument("missing JSON field 'layers'");
    std::vector<DenseLayer> layers;
    for (const auto& jl : j["layers"]) {
        DenseLayer l;
        const auto in = field<std::size_t>(jl, "in");
        const auto out = field<std::size_t>(jl, "out");
        l.weights = Matrix(out, in, field<std::vector<double>>(jl, "weights"));
        l.biases = field<std::vector<double>>(jl, "biases");
        l.activation = activation_from_name(field<std::string>(jl, "activation"));
        l.leaky_slope = field<double>(jl, "leaky_slope");
        if (jl.contains("batch_norm")) {
            const auto& b = jl["batch_norm"];
            BatchNorm bn;
            bn.gamma = field<std::vector<double>>(b, "gamma");
            bn.beta = field<std::vector<double>>(b, "beta");
            bn.running_mean = field<std::vector<double>>(b, "running_mean");
            bn.running_var = field<std::vector<double>>(b, "running_var");
            bn.momentum = field<double>(b, "momentum");
            bn.epsilon = field<double>(b, "epsilon");
            l.batch_norm = std::move(bn);
        }
        layers.push_back(std::move(l));
    }
    return Mlp(std::move(layers));
}

std::string gaussian_to_json(const GaussianCopulaModel& model) {
    json j;
    j["rho"] = model.rho;
    return j.dump();
}

GaussianCopulaModel gaussian_from_json(const std::string& text) {
    const GaussianCopulaModel m{field<double>(parse(text), "rho")};
    if (!(std::abs(m.rho) < 1.0)) throw std::invalid_argument("rho must satisfy |rho| < 1");
    return m;
}

std::string training_record_to_json(const TrainingRecord& record) {
    json j;
    j["iter"] = record.iteration;
    for (const auto& [k, v] : record.metrics) j[k] = v;
    return j.dump();
}

std::string report_to_json(const EvaluationReport& report) {
    json j;
    j["model"] = report.model;
    j["d_ks"] = report.ks.statistic;
    j["p_value"] = report.ks.p_value;
    j["n_a"] = report.n_a;
    j["n_b"] = report.n_b;
    j["permutations"] = report.ks.permutations;
    return j.dump(2);
}

EvaluationReport report_from_json(const std::string& text) {
    const json j = parse(text);
    EvaluationReport r;
    r.model = field<std::string>(j, "model");
    r.ks.statistic = field<double>(j, "d_ks");
    r.ks.p_value = field<double>(j, "p_value");
    r.n_a = field<std::size_t>(j, "n_a");
    r.n_b = field<std::size_t>(j, "n_b");
    r.ks.permutations = field<std::size_t>(j, "permutations");
    return r;
}

std::string reduction_check_to_json(std::size_t n, double max_diff) {
    json j;
    j["n"] = n;
    j["max_diff"] = max_diff;
    return j.dump();
}

}  // namespace qcopula
