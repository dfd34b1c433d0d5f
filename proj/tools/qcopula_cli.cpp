// qcopula: command-line front end.
//
//   qcopula ingest       --prices P.csv --out-dir D
//   qcopula train-qcbm   --returns R.csv --seed S --out-dir D [hyperparameters]
//   qcopula train-qgan   ...
//   qcopula train-cgan   ...
//   qcopula fit-gaussian ...
//   qcopula sample       --checkpoint C.json --count N --seed S --out-dir D [--returns R.csv]
//   qcopula evaluate     --samples S.csv --returns R.csv --seed S [--out-dir D]
//   qcopula reduce-check --n 3 --instances 10 --seed S
//
// Settings are layered: defaults, then --config FILE.json, then flags.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcopula/copula.hpp"
#include "qcopula/hardness.hpp"
#include "qcopula/pipeline.hpp"
#include "qcopula/random.hpp"

namespace fs = std::filesystem;
using namespace qcopula;

namespace {

struct Flags {
    std::optional<std::size_t> qubits, layers, pad_bits, shots, iterations, n_inner, batch, permutations, count;
    std::optional<double> a, c, gamma, lr_disc, lr_gen, noise_p;
    std::optional<std::uint64_t> seed;
    std::string config_path;
    std::string out_dir = ".";
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path, "JSON file with settings; flags take precedence")
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", f.seed, "RNG seed");
    cmd->add_option("--out-dir", f.out_dir, "Output directory")->capture_default_str();
}

void add_training(CLI::App* cmd, Flags& f) {
    add_common(cmd, f);
    cmd->add_option("--qubits", f.qubits, "Total qubits over both registers (default 6)");
    cmd->add_option("--layers", f.layers, "Ansatz layers (default 1)");
    cmd->add_option("--pad-bits", f.pad_bits, "Random low-order bits appended to samples (default 20)");
    cmd->add_option("--shots", f.shots, "QCBM shots per cost evaluation (default 2000)");
    cmd->add_option("--iterations", f.iterations, "Training iterations (model default)");
    cmd->add_option("--a", f.a, "SPSA step scale");
    cmd->add_option("--c", f.c, "SPSA perturbation scale");
    cmd->add_option("--gamma", f.gamma, "SPSA perturbation decay (default 0.101)");
    cmd->add_option("--n-inner", f.n_inner, "SPSA steps per training iteration, QCBM and QGAN (default 5)");
    cmd->add_option("--lr-disc", f.lr_disc, "QGAN discriminator learning rate (default 0.0015)");
    cmd->add_option("--lr-gen", f.lr_gen, "Classical GAN learning rate (default 1e-4)");
    cmd->add_option("--batch", f.batch, "GAN batch size (default 2048)");
    cmd->add_option("--noise-p", f.noise_p, "Two-qubit depolarizing probability (default 0)");
    cmd->add_option("--permutations", f.permutations, "KS permutations (default 1000)");
    cmd->add_option("--count", f.count, "Samples drawn after training (GAN and Gaussian models)");
}

template <typename T>
void take(std::optional<T>& slot, const nlohmann::json& j, const char* key) {
    if (!slot && j.contains(key)) slot = j.at(key).get<T>();
}

// Config file values fill only what the command line left unset.
void merge_config(Flags& f) {
    if (f.config_path.empty()) return;
    std::ifstream in(f.config_path);
    const auto j = nlohmann::json::parse(in);
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    take(f.qubits, j, "qubits");
    take(f.layers, j, "layers");
    take(f.pad_bits, j, "pad_bits");
    take(f.shots, j, "shots");
    take(f.iterations, j, "iterations");
    take(f.n_inner, j, "n_inner");
    take(f.batch, j, "batch");
    take(f.permutations, j, "permutations");
    take(f.count, j, "count");
    take(f.a, j, "a");
    take(f.c, j, "c");
    take(f.gamma, j, "gamma");
    take(f.lr_disc, j, "lr_disc");
    take(f.lr_gen, j, "lr_gen");
    take(f.noise_p, j, "noise_p");
    take(f.seed, j, "seed");
}

std::uint64_t require_seed(const Flags& f) {
    if (!f.seed) throw std::invalid_argument("--seed is required");
    return *f.seed;
}

PipelineConfig pipeline_config(const Flags& f, ModelKind model) {
    PipelineConfig cfg;
    cfg.model = model;
    cfg.seed = require_seed(f);
    if (f.qubits) cfg.qubits = *f.qubits;
    if (f.layers) cfg.layers = *f.layers;
    if (f.pad_bits) cfg.pad_bits = *f.pad_bits;
    if (f.shots) cfg.shots = *f.shots;
    cfg.iterations = f.iterations;
    if (f.a) cfg.a = *f.a;
    if (f.c) cfg.c = *f.c;
    if (f.gamma) cfg.gamma = *f.gamma;
    if (f.n_inner) cfg.n_inner = *f.n_inner;
    if (f.lr_disc) cfg.lr_disc = *f.lr_disc;
    if (f.lr_gen) cfg.lr_gen = *f.lr_gen;
    if (f.batch) cfg.batch = *f.batch;
    if (f.noise_p) cfg.noise_p = *f.noise_p;
    if (f.permutations) cfg.permutations = *f.permutations;
    if (f.count) cfg.sample_count = *f.count;
    return cfg;
}

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    auto out = open_output(path);
    out << text << '\n';
}

void write_points(const fs::path& path, const Matrix& m, const char* h1, const char* h2) {
    auto out = open_output(path);
    write_points_csv(out, m, h1, h2);
}

int run_ingest(const std::string& prices, const Flags& f) {
    const auto data = ingest_prices_file(prices);
    const fs::path path = fs::path(f.out_dir) / "returns.csv";
    auto out = open_output(path);
    write_returns_csv(out, data);
    std::cout << "wrote " << data.size() << " return rows (" << data.name1 << ", " << data.name2 << ") to " << path.string()
              << '\n';
    return 0;
}

int run_train(const std::string& returns, Flags& f, ModelKind model) {
    merge_config(f);
    const auto cfg = pipeline_config(f, model);
    const auto data = read_returns_file(returns);
    const fs::path dir = f.out_dir;

    auto log = open_output(dir / "log.jsonl");
    const auto result = run_pipeline(data, cfg, [&log](const std::string& line) { log << line << '\n' << std::flush; });

    write_text(dir / "checkpoint.json", result.checkpoint_json);
    write_points(dir / "samples_copula.csv", result.copula_samples, "u1", "u2");
    write_points(dir / "samples.csv", result.data_samples, "x1", "x2");
    write_text(dir / "report.json", report_to_json(result.report));
    std::cout << report_to_json(result.report) << '\n';
    return 0;
}

int run_sample(const std::string& checkpoint, const std::string& returns, Flags& f) {
    merge_config(f);
    const std::uint64_t seed = require_seed(f);
    std::ifstream in(checkpoint);
    if (!in) throw std::runtime_error("cannot open " + checkpoint);
    std::stringstream text;
    text << in.rdbuf();
    const Matrix u =
        sample_from_checkpoint(text.str(), f.count.value_or(2048), seed, NoiseConfig{f.noise_p.value_or(0.0)});
    const fs::path dir = f.out_dir;
    write_points(dir / "samples_copula.csv", u, "u1", "u2");
    if (!returns.empty()) {
        const auto data = read_returns_file(returns);
        const std::vector<EmpiricalCdf> marginals{EmpiricalCdf(data.r1), EmpiricalCdf(data.r2)};
        write_points(dir / "samples.csv", inverse_pit_columns(u, marginals), "x1", "x2");
    }
    std::cout << "wrote " << u.rows() << " samples to " << dir.string() << '\n';
    return 0;
}

// Copula-space samples (u1,u2) are compared with a bootstrap of the PIT of
// the returns; data-space samples (x1,x2) with a bootstrap of the returns.
int run_evaluate(const std::string& samples_path, const std::string& returns, const std::string& model, Flags& f) {
    merge_config(f);
    const std::uint64_t seed = require_seed(f);
    std::ifstream in(samples_path);
    if (!in) throw std::runtime_error("cannot open " + samples_path);
    std::string header;
    std::getline(in, header);
    in.seekg(0);
    const Matrix samples = read_points_csv(in);
    const auto data = read_returns_file(returns);
    const Matrix training = header.rfind("u1", 0) == 0 ? pit_transform_columns(data.as_matrix()) : data.as_matrix();
    const Matrix reference = bootstrap_reference(training, derive_seed(seed, 43));
    const auto report = evaluate_samples(model, samples, reference, f.permutations.value_or(1000), derive_seed(seed, 44));
    const auto json = report_to_json(report);
    if (f.out_dir != ".") write_text(fs::path(f.out_dir) / "report.json", json);
    std::cout << json << '\n';
    return 0;
}

int run_reduce_check(std::size_t n, std::size_t instances, Flags& f) {
    merge_config(f);
    Rng rng(require_seed(f));
    for (std::size_t i = 0; i < instances; ++i) {
        const auto inst = random_iqp_instance(n, rng);
        std::cout << reduction_check_to_json(n, verify_iqp_reduction(inst)) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum copula modelling: qopula circuits, QCBM/QGAN training and 2-d KS evaluation"};
    app.require_subcommand(1);

    Flags f;
    std::string prices, returns, checkpoint, samples, model = "samples";
    std::size_t reduce_n = 3, reduce_instances = 10;

    auto* ingest = app.add_subcommand("ingest", "Price CSV -> returns CSV");
    ingest->add_option("--prices", prices, "date,<sym1>,<sym2> CSV")->required()->check(CLI::ExistingFile);
    ingest->add_option("--out-dir", f.out_dir, "Output directory")->capture_default_str();

    struct TrainCmd {
        const char* name;
        const char* help;
        ModelKind kind;
    };
    const TrainCmd trains[] = {
        {"train-qcbm", "Train a qopula Born machine on the KL cost", ModelKind::Qcbm},
        {"train-qgan", "Train a qopula generator adversarially", ModelKind::Qgan},
        {"train-cgan", "Train the classical GAN baseline", ModelKind::ClassicalGan},
        {"fit-gaussian", "Fit the Gaussian copula baseline", ModelKind::Gaussian},
    };
    std::vector<std::pair<CLI::App*, ModelKind>> train_cmds;
    for (const auto& t : trains) {
        auto* cmd = app.add_subcommand(t.name, t.help);
        cmd->add_option("--returns", returns, "r1,r2 CSV from `ingest`")->required()->check(CLI::ExistingFile);
        add_training(cmd, f);
        train_cmds.emplace_back(cmd, t.kind);
    }

    auto* sample = app.add_subcommand("sample", "Draw samples from a saved checkpoint");
    sample->add_option("--checkpoint", checkpoint, "checkpoint.json")->required()->check(CLI::ExistingFile);
    sample->add_option("--returns", returns, "Back-transform through these marginals")->check(CLI::ExistingFile);
    sample->add_option("--count", f.count, "Number of samples (default 2048)");
    sample->add_option("--noise-p", f.noise_p, "Two-qubit depolarizing probability");
    add_common(sample, f);

    auto* evaluate = app.add_subcommand("evaluate", "2-d KS test of samples against bootstrapped training data");
    evaluate->add_option("--samples", samples, "u1,u2 or x1,x2 CSV")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--returns", returns, "r1,r2 CSV")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--model", model, "Name recorded in the report");
    evaluate->add_option("--permutations", f.permutations, "KS permutations (default 1000)");
    add_common(evaluate, f);

    auto* reduce = app.add_subcommand("reduce-check", "Verify the IQP reduction on random instances");
    reduce->add_option("--n", reduce_n, "Qubits per register")->check(CLI::Range(1, 8))->capture_default_str();
    reduce->add_option("--instances", reduce_instances, "Random instances")->capture_default_str();
    add_common(reduce, f);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) return run_ingest(prices, f);
        for (const auto& [cmd, kind] : train_cmds) {
            if (*cmd) return run_train(returns, f, kind);
        }
        if (*sample) return run_sample(checkpoint, returns, f);
        if (*evaluate) return run_evaluate(samples, returns, model, f);
        if (*reduce) return run_reduce_check(reduce_n, reduce_instances, f);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
