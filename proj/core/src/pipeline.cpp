#include "qcopula/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qcopula/copula.hpp"
#include "qcopula/gaussian_copula.hpp"
#include "qcopula/qcbm.hpp"
#include "qcopula/qgan.hpp"

namespace qcopula {
namespace {

enum : std::uint64_t { kStreamTrain = 41, kStreamSample = 42, kStreamBootstrap = 43, kStreamKs = 44 };

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool is_missing(const std::string& cell) {
    return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "null";
}

double parse_number(const std::string& cell, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": not a number: '" + cell + "'");
    }
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

std::string format_g(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

}  // namespace

Matrix ReturnsDataset::as_matrix() const {
    if (r1.size() != r2.size()) throw std::logic_error("return series differ in length");
    Matrix m(r1.size(), 2);
    for (std::size_t i = 0; i < r1.size(); ++i) {
        m(i, 0) = r1[i];
        m(i, 1) = r2[i];
    }
    return m;
}

ReturnsDataset ingest_prices(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("prices CSV is empty");
    const auto header = split_csv_line(line);
    if (header.size() != 3) throw std::invalid_argument("prices CSV header must be date,<sym1>,<sym2>");

    std::vector<double> p1;
    std::vector<double> p2;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() == 2) cells.emplace_back();  // trailing empty cell without a comma
        if (cells.size() != 3) throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 3 columns");
        if (is_missing(cells[1]) || is_missing(cells[2])) continue;
        const double a = parse_number(cells[1], line_no);
        const double b = parse_number(cells[2], line_no);
        if (std::isnan(a) || std::isnan(b)) continue;
        if (!(a > 0.0) || !(b > 0.0)) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": prices must be positive");
        }
        p1.push_back(a);
        p2.push_back(b);
    }
    if (p1.size() < 2) throw std::invalid_argument("prices CSV needs at least 2 usable rows");

    ReturnsDataset out;
    out.name1 = header[1];
    out.name2 = header[2];
    out.r1 = daily_returns(p1);
    out.r2 = daily_returns(p2);
    return out;
}

ReturnsDataset ingest_prices_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return ingest_prices(in);
}

void write_returns_csv(std::ostream& out, const ReturnsDataset& data) {
    out << "r1,r2\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        out << format_g(data.r1[i], 17) << ',' << format_g(data.r2[i], 17) << '\n';
    }
}

ReturnsDataset read_returns_csv(std::istream& in) {
    const Matrix m = read_points_csv(in);
    ReturnsDataset d;
    d.r1 = m.column(0);
    d.r2 = m.column(1);
    return d;
}

ReturnsDataset read_returns_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_returns_csv(in);
}

void write_points_csv(std::ostream& out, const Matrix& points, const std::string& h1, const std::string& h2) {
    if (points.cols() != 2) throw std::invalid_argument("expected 2-column points");
    out << h1 << ',' << h2 << '\n';
    for (std::size_t r = 0; r < points.rows(); ++r) {
        out << format_g(points(r, 0), 9) << ',' << format_g(points(r, 1), 9) << '\n';
    }
}

Matrix read_points_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("CSV is empty");
    if (split_csv_line(line).size() != 2) throw std::invalid_argument("expected a 2-column header");
    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 2) throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 2 columns");
        values.push_back(parse_number(cells[0], line_no));
        values.push_back(parse_number(cells[1], line_no));
    }
    const std::size_t rows = values.size() / 2;
    return Matrix(rows, 2, std::move(values));
}

Matrix read_points_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_points_csv(in);
}

ModelKind parse_model_kind(const std::string& name) {
    if (name == "qcbm") return ModelKind::Qcbm;
    if (name == "qgan") return ModelKind::Qgan;
    if (name == "cgan") return ModelKind::ClassicalGan;
    if (name == "gaussian") return ModelKind::Gaussian;
    throw std::invalid_argument("unknown model '" + name + "' (expected qcbm, qgan, cgan or gaussian)");
}

std::string model_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Qcbm: return "qcbm";
        case ModelKind::Qgan: return "qgan";
        case ModelKind::ClassicalGan: return "cgan";
        case ModelKind::Gaussian: return "gaussian";
    }
    return "unknown";
}

QopulaSpec PipelineConfig::spec() const {
    if (qubits < 2 || qubits % 2 != 0) throw std::invalid_argument("--qubits must be an even number >= 2");
    QopulaSpec s{2, qubits / 2, layers, pad_bits};
    s.validate();
    return s;
}

Matrix bootstrap_reference(const Matrix& training, std::uint64_t seed) {
    Rng rng(seed);
    return bootstrap_rows(training, training.rows(), rng);
}

EvaluationReport evaluate_samples(const std::string& model, const Matrix& samples, const Matrix& reference,
                                  std::size_t permutations, std::uint64_t seed) {
    EvaluationReport r;
    r.model = model;
    r.ks = ks2d_test(samples, reference, permutations, seed);
    r.n_a = samples.rows();
    r.n_b = reference.rows();
    return r;
}

Matrix sample_from_checkpoint(const std::string& checkpoint_json, std::size_t count, std::uint64_t seed,
                              const NoiseConfig& noise) {
    if (checkpoint_json.find("\"theta\"") != std::string::npos) {
        const auto c = qopula_from_json(checkpoint_json);
        return sample_copula_points(c.spec, c.theta, count, seed, noise);
    }
    if (checkpoint_json.find("\"rho\"") != std::string::npos) {
        return sample_gaussian_copula(gaussian_from_json(checkpoint_json), count, seed);
    }
    return sample_classical_generator(mlp_from_json(checkpoint_json), count, seed);
}

PipelineResult run_pipeline(const ReturnsDataset& data, const PipelineConfig& config, const LogSink& sink) {
    if (data.size() < 10) throw std::invalid_argument("pipeline needs at least 10 return rows");
    PipelineResult out;
    out.model = model_name(config.model);

    const Matrix returns = data.as_matrix();
    out.training_copula = pit_transform_columns(returns);
    const std::vector<EmpiricalCdf> marginals{EmpiricalCdf(data.r1), EmpiricalCdf(data.r2)};

    const std::uint64_t train_seed = derive_seed(config.seed, kStreamTrain);
    const std::uint64_t sample_seed = derive_seed(config.seed, kStreamSample);
    const auto emit = [&](const TrainingRecord& rec) {
        auto line = training_record_to_json(rec);
        if (sink) sink(line);
        out.log_lines.push_back(std::move(line));
    };

    switch (config.model) {
        case ModelKind::Qcbm: {
            QcbmConfig qc;
            qc.spec = config.spec();
            qc.spec.pad_bits = 0;
            qc.spsa = {config.a > 0 ? config.a : 0.5, config.c > 0 ? config.c : 0.5, config.gamma,
                       config.iterations.value_or(200), 0};
            qc.shots = config.shots;
            qc.inner_steps = config.n_inner;
            qc.target = bin_2d(out.training_copula, std::size_t{1} << qc.spec.qubits_per_register);
            qc.noise = NoiseConfig{config.noise_p};
            qc.seed = train_seed;
            const auto result = train_qcbm(qc, emit);

            const QopulaSpec padded = config.spec();
            Rng rng(sample_seed);
            const auto circuits = lowest_cost_snapshots(result, config.qcbm_circuits);
            std::vector<double> flat;
            for (const auto& theta : circuits) {
                const Matrix pts =
                    sample_copula_points(padded, theta, config.qcbm_shots_per_circuit, rng, qc.noise);
                flat.insert(flat.end(), pts.data().begin(), pts.data().end());
            }
            const std::size_t rows = flat.size() / 2;
            out.copula_samples = Matrix(rows, 2, std::move(flat));
            out.checkpoint_json = qopula_to_json(padded, result.best_theta);
            break;
        }
        case ModelKind::Qgan: {
            QganConfig gc;
            gc.spec = config.spec();
            gc.batch = config.batch;
            gc.iterations = config.iterations.value_or(1000);
            gc.spsa = {config.a > 0 ? config.a : 0.008, config.c > 0 ? config.c : 0.01, config.gamma, config.n_inner, 0};
            gc.discriminator.learning_rate = config.lr_disc;
            gc.noise = NoiseConfig{config.noise_p};
            gc.seed = train_seed;
            const auto result = train_qgan(gc, out.training_copula, emit);
            out.copula_samples =
                sample_copula_points(gc.spec, result.theta, config.sample_count, sample_seed, gc.noise);
            out.checkpoint_json = qopula_to_json(gc.spec, result.theta);
            break;
        }
        case ModelKind::ClassicalGan: {
            ClassicalGanConfig cc;
            cc.batch = config.batch;
            cc.iterations = config.iterations.value_or(20000);
            cc.generator.learning_rate = config.lr_gen;
            cc.discriminator.learning_rate = config.lr_gen;
            cc.seed = train_seed;
            const auto result = train_classical_gan(cc, out.training_copula, emit);
            out.copula_samples = sample_classical_generator(result.generator, config.sample_count, sample_seed);
            out.checkpoint_json = mlp_to_json(result.generator);
            break;
        }
        case ModelKind::Gaussian: {
            const auto model = fit_gaussian_copula(out.training_copula);
            out.copula_samples = sample_gaussian_copula(model, config.sample_count, sample_seed);
            out.checkpoint_json = gaussian_to_json(model);
            break;
        }
    }

    out.data_samples = inverse_pit_columns(out.copula_samples, marginals);
    const Matrix reference = bootstrap_reference(out.training_copula, derive_seed(config.seed, kStreamBootstrap));
    out.report = evaluate_samples(out.model, out.copula_samples, reference, config.permutations,
                                  derive_seed(config.seed, kStreamKs));
    return out;
}

}  // namespace qcopula
