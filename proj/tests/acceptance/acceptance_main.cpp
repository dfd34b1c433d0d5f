// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcopula/copula.hpp"
#include "qcopula/eval.hpp"
#include "qcopula/hardness.hpp"
#include "qcopula/nnet.hpp"
#include "qcopula/optim.hpp"
#include "qcopula/pipeline.hpp"
#include "qcopula/qcbm.hpp"
#include "qcopula/qopula.hpp"
#include "qcopula/random.hpp"
#include "qcopula/statevec.hpp"

using namespace qcopula;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const ReturnsDataset& synthetic_data() {
    static const ReturnsDataset d = ingest_prices_file(std::string(QCOPULA_DATA_DIR) + "/synthetic_prices.csv");
    return d;
}

DiscreteDistribution2D synthetic_target() { return bin_2d(pit_transform_columns(synthetic_data().as_matrix()), 8); }

QcbmConfig desk_qcbm(std::uint64_t seed, std::size_t iterations) {
    QcbmConfig c;
    c.spec = {2, 3, 1, 0};
    c.spsa = {0.5, 0.5, 0.101, iterations, 0};
    c.shots = 2000;
    c.target = synthetic_target();
    c.seed = seed;
    return c;
}

// ---------------------------------------------------------------- 1
Outcome param_count_check() {
    const auto n = param_count({2, 3, 1, 0});
    return {n == 24, fmt("param_count(2,3,1) = %zu", n)};
}

// ---------------------------------------------------------------- 2
Outcome marginal_uniformity_check() {
    Rng rng(2002);
    double worst = 0.0;
    std::size_t runs = 0;
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t layers = 1; layers <= 2; ++layers) {
            const QopulaSpec spec{2, n, layers, 0};
            for (int t = 0; t < 100; ++t) {
                const auto theta = random_parameters(spec, rng);
                for (const auto& m : register_marginals(exact_distribution(spec, theta), spec))
                    for (double p : m) worst = std::max(worst, std::abs(p - std::ldexp(1.0, -static_cast<int>(n))));
                ++runs;
            }
        }
    return {worst <= 1e-10, fmt("%zu circuits, max |p - 2^-n| = %.2e", runs, worst)};
}

// ---------------------------------------------------------------- 3
Outcome iqp_check() {
    Rng rng(3003);
    double worst = 0.0;
    for (std::size_t n = 2; n <= 4; ++n)
        for (int t = 0; t < 100; ++t) worst = std::max(worst, verify_iqp_reduction(random_iqp_instance(n, rng)));
    return {worst <= 1e-10, fmt("300 instances, max diff = %.2e", worst)};
}

// ---------------------------------------------------------------- 4
Outcome noise_oracle_check() {
    Circuit bell(2);
    bell.add(Gate::h(0)).add(Gate::cnot(0, 1));
    Circuit mixed(2);
    mixed.add(Gate::rx(0, 0.7)).add(Gate::rz(1, 1.1)).add(Gate::rxx(0, 1, 0.4)).add(Gate::h(1))
        .add(Gate::cnot(1, 0)).add(Gate::rx(1, -0.9)).add(Gate::rxx(0, 1, 1.3));
    const std::size_t trajectories = 100000;
    bool ok = true;
    double worst_z = 0.0;
    std::uint64_t seed = 4004;
    for (const Circuit* c : {&bell, &mixed})
        for (double p : {0.04, 0.5, 1.0}) {
            const NoiseConfig noise{p};
            const auto exact = density_oracle_probabilities(*c, noise);
            std::vector<double> sum(4), sq(4);
            Rng rng(seed++);
            for (std::size_t t = 0; t < trajectories; ++t) {
                const auto probs = probabilities(apply_noisy_circuit(*c, noise, rng));
                for (int k = 0; k < 4; ++k) {
                    sum[k] += probs[k];
                    sq[k] += probs[k] * probs[k];
                }
            }
            for (int k = 0; k < 4; ++k) {
                const double mean = sum[k] / trajectories;
                const double var = std::max(0.0, sq[k] / trajectories - mean * mean);
                const double se = std::sqrt(var / (trajectories - 1));
                const double diff = std::abs(mean - exact[k]);
                if (diff > 3 * se + 1e-12) ok = false;
                if (se > 0) worst_z = std::max(worst_z, diff / se);
            }
        }
    return {ok, fmt("2 circuits x p in {0.04, 0.5, 1}, worst |z| = %.2f", worst_z)};
}

// ---------------------------------------------------------------- 5
double weighted_output(Mlp net, const Matrix& x, const Matrix& w) {
    const auto out = forward(net, x, Mode::Train).output;
    double s = 0.0;
    for (std::size_t i = 0; i < out.data().size(); ++i) s += out.data()[i] * w.data()[i];
    return s;
}

double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        scale = std::max(scale, std::abs(b[i]));
        diff = std::max(diff, std::abs(a[i] - b[i]));
    }
    return diff / std::max(scale, 1e-12);
}

Outcome gradient_check() {
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto arch = s % 2 == 0 ? discriminator_architecture() : classical_generator_architecture();
        Rng rng(5005 + s);
        const Mlp net = init_mlp(arch, 5005 + s);
        Matrix x(16, net.input_dim()), w(16, net.output_dim());
        for (auto& v : x.data()) v = rng.uniform();
        for (auto& v : w.data()) v = rng.uniform(-1.0, 1.0);
        Mlp work = net;
        const auto fwd = forward(work, x, Mode::Train);
        const auto grads = backward(net, fwd.cache, w);
        const auto numeric = oracle::numeric_gradient(
            [&](const std::vector<double>& p) {
                Mlp m = net;
                m.set_parameters(p);
                return weighted_output(m, x, w);
            },
            net.parameters());
        worst = std::max(worst, relative_error(grads.params, numeric));
    }
    return {worst <= 1e-4, fmt("20 nets (10 discriminators, 10 generators), max rel err = %.2e", worst)};
}

// ---------------------------------------------------------------- 6
Outcome spsa_check() {
    // Same gains as the 4-d reference example; no stability constant in a_k.
    const std::size_t dim = 24;
    int ok = 0;
    std::vector<double> finals;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(6006 + seed);
        std::vector<double> target(dim);
        for (auto& t : target) t = rng.uniform(-1.0, 1.0);
        const CostFunction f = [&](std::span<const double> t) {
            double s = 0.0;
            for (std::size_t i = 0; i < dim; ++i) s += (t[i] - target[i]) * (t[i] - target[i]);
            return s;
        };
        const auto r = spsa_run(f, std::vector<double>(dim, 0.0), {0.1, 0.1, 0.101, 500, seed});
        finals.push_back(r.cost_trace.back());
        if (r.cost_trace.back() <= 1e-2) ++ok;
    }
    std::sort(finals.begin(), finals.end());
    const double median = 0.5 * (finals[4] + finals[5]);
    return {ok >= 9, fmt("a=c=0.1, 500 iterations: %d/10 seeds at cost <= 1e-2, median final cost %.3g", ok,
                         median)};
}

// ---------------------------------------------------------------- 7
Outcome ks_check() {
    Rng rng(7007);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t na = 1 + rng.below(20), nb = 1 + rng.below(20);
        Matrix a(na, 2), b(nb, 2);
        // coarse lattice so ties on both axes are common
        for (auto& v : a.data()) v = static_cast<double>(rng.below(6)) / 5.0;
        for (auto& v : b.data()) v = static_cast<double>(rng.below(6)) / 5.0;
        worst = std::max(worst, std::abs(ks2d_statistic(a, b) - oracle::ks2d_brute(a, b)));
    }
    int rejected = 0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        Matrix a(200, 2), b(200, 2);
        for (auto& v : a.data()) v = rng.uniform();
        for (auto& v : b.data()) v = rng.uniform();
        if (ks2d_test(a, b, 100, derive_seed(7007, t)).p_value <= 0.05) ++rejected;
    }
    const double rate = rejected / 200.0;
    return {worst <= 1e-12 && rate >= 0.01 && rate <= 0.10,
            fmt("50 brute-force instances, max diff %.1e; null rejection %.3f", worst, rate)};
}

// ---------------------------------------------------------------- 8
Outcome desk_qcbm_check() {
    int ok = 0;
    std::string per_seed;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto r = train_qcbm(desk_qcbm(seed, 20));
        const double first = *r.log.front().metric("kl");
        if (r.best_cost <= 0.5 * first) ++ok;
        per_seed += fmt(" %.2f", r.best_cost / first);
    }
    return {ok >= 8, fmt("20 iterations, best/initial KL <= 0.5 for %d/10 seeds; ratios%s", ok, per_seed.c_str())};
}

// Not graded: the same ratio over the default 200-iteration run.
std::string desk_qcbm_long_info() {
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto r = train_qcbm(desk_qcbm(seed, 200));
        if (r.best_cost <= 0.5 * *r.log.front().metric("kl")) ++ok;
    }
    return fmt("200 iterations: best/initial KL <= 0.5 for %d/10 seeds", ok);
}

// ---------------------------------------------------------------- 9
Outcome table_band_check() {
    const auto& data = synthetic_data();
    std::string qcbm_line = "QCBM D/p:";
    bool qcbm_ok = false;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        PipelineConfig cfg;
        cfg.model = ModelKind::Qcbm;
        cfg.seed = seed;
        const auto r = run_pipeline(data, cfg);
        const auto& ks = r.report.ks;
        qcbm_line += fmt(" %.4f/%.3f", ks.statistic, ks.p_value);
        if (ks.statistic <= 0.06 && ks.p_value >= 0.05) qcbm_ok = true;
    }
    std::string qgan_line = "QGAN D/p:";
    bool qgan_ok = false;
    double slowest = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        PipelineConfig cfg;
        cfg.model = ModelKind::Qgan;
        cfg.seed = seed;
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = run_pipeline(data, cfg);
        slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        const auto& ks = r.report.ks;
        qgan_line += fmt(" %.4f/%.3f", ks.statistic, ks.p_value);
        if (ks.statistic <= 0.05 && ks.p_value >= 0.05) qgan_ok = true;
    }
    return {qcbm_ok && qgan_ok && slowest < 1800.0,
            qcbm_line + "; " + qgan_line + fmt("; slowest QGAN run %.0f s", slowest)};
}

// ---------------------------------------------------------------- 10
Outcome noise_robustness_check() {
    auto cfg = desk_qcbm(1, 200);
    cfg.noise = {0.02};
    const auto r = train_qcbm(cfg);
    const double first = *r.log.front().metric("kl");
    double best = first;
    bool monotone = true;
    for (const auto& rec : r.log) {
        const double next = std::min(best, *rec.metric("kl"));
        if (next > best) monotone = false;
        best = next;
    }
    const double ratio = best / first;
    return {monotone && ratio <= 0.7, fmt("p=0.02, 200 iterations: best/initial KL = %.3f", ratio)};
}

// ---------------------------------------------------------------- 11
Outcome determinism_check() {
    const auto& data = synthetic_data();
    const auto run = [&](ModelKind kind, std::size_t iterations) {
        PipelineConfig cfg;
        cfg.model = kind;
        cfg.seed = 11;
        cfg.iterations = iterations;
        cfg.permutations = 100;
        const auto r = run_pipeline(data, cfg);
        std::ostringstream out;
        for (const auto& l : r.log_lines) out << l << '\n';
        out << r.checkpoint_json << '\n';
        write_points_csv(out, r.data_samples, "x1", "x2");
        return out.str();
    };
    std::string failed;
    for (auto [kind, iters] : {std::pair{ModelKind::Qcbm, 10}, {ModelKind::Qgan, 10}, {ModelKind::ClassicalGan, 200},
                               {ModelKind::Gaussian, 1}}) {
        if (run(kind, iters) != run(kind, iters)) failed += " " + model_name(kind);
    }
    return {failed.empty(), failed.empty() ? "logs, checkpoints and samples identical for all four models"
                                           : "differences in:" + failed};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "parameter count", param_count_check},
        {2, "exact marginal uniformity", marginal_uniformity_check},
        {3, "IQP reduction", iqp_check},
        {4, "noise model vs density oracle", noise_oracle_check},
        {5, "backprop vs finite differences", gradient_check},
        {6, "SPSA on 24-d quadratic", spsa_check},
        {7, "2-d KS brute force and null calibration", ks_check},
        {8, "QCBM desk-scale training", desk_qcbm_check},
        {9, "end-to-end KS band", table_band_check},
        {10, "noisy QCBM training", noise_robustness_check},
        {11, "determinism", determinism_check},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  %2d  %-40s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
        if (c.id == 8) {
            std::printf("info      QCBM desk-scale, %s\n", desk_qcbm_long_info().c_str());
            std::fflush(stdout);
        }
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
