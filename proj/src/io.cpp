#include "scig/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "scig/errors.hpp"

namespace scig {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

nlohmann::json matrix_to_json(const Mat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a nonempty matrix array");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != cols)
            throw std::invalid_argument("ragged matrix array");
        for (Eigen::Index jj = 0; jj < cols; ++jj) m(i, jj) = row.at(static_cast<std::size_t>(jj)).get<double>();
    }
    return m;
}

}  // namespace

nlohmann::json to_json(const ProcessModel& model) {
    nlohmann::json j;
    if (std::holds_alternative<FirProcessModel>(model)) {
        const auto& fir = std::get<FirProcessModel>(model);
        j["type"] = "fir";
        j["taps"] = fir.taps();
        j["innovation_cov"] = matrix_to_json(fir.innovation_cov());
    } else {
        const auto& var = std::get<Var1ProcessModel>(model);
        j["type"] = "var1";
        j["transition"] = matrix_to_json(var.transition());
        j["noise_var"] = var.noise_var();
    }
    return j;
}

ProcessModel model_from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "fir") {
        return FirProcessModel(j.at("taps").get<std::vector<double>>(),
                               matrix_from_json(j.at("innovation_cov")));
    }
    if (type == "var1") {
        return Var1ProcessModel(matrix_from_json(j.at("transition")), j.at("noise_var").get<double>());
    }
    if (type == "fir_random_cig") {
        return fir_random_cig_model(j.at("p").get<int>(), j.at("max_degree").get<int>(),
                                    j.at("coupling").get<double>(), j.at("taps").get<std::vector<double>>(),
                                    j.at("graph_seed").get<std::uint64_t>());
    }
    throw std::invalid_argument("unknown model type: " + type);
}

nlohmann::json to_json(const WindowFunction& window) {
    nlohmann::json j;
    switch (window.kind) {
        case WindowKind::rectangular: j["kind"] = "rectangular"; break;
        case WindowKind::bartlett: j["kind"] = "bartlett"; break;
        case WindowKind::gaussian:
            j["kind"] = "gaussian";
            j["width"] = window.width;
            break;
    }
    j["support"] = window.support;
    return j;
}

WindowFunction window_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const int support = j.at("support").get<int>();
    if (kind == "rectangular") return WindowFunction::rectangular_window(support);
    if (kind == "bartlett") return WindowFunction::bartlett_window(support);
    if (kind == "gaussian") return WindowFunction::gaussian_window(j.at("width").get<double>(), support);
    throw std::invalid_argument("unknown window kind: " + kind);
}

nlohmann::json to_json(const HermitianMatrixSequence& seq) {
    nlohmann::json j;
    j["p"] = seq.dimension();
    j["F"] = seq.frequency_count();
    nlohmann::json grid = nlohmann::json::array();
    for (int f = 0; f < seq.frequency_count(); ++f) grid.push_back(seq.grid_point(f));
    j["grid"] = std::move(grid);

    nlohmann::json mats = nlohmann::json::array();
    for (const auto& m : seq.matrices) {
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index jj = 0; jj < m.cols(); ++jj)
                row.push_back(nlohmann::json::array({m(i, jj).real(), m(i, jj).imag()}));
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    j["matrices"] = std::move(mats);
    return j;
}

HermitianMatrixSequence sdm_from_json(const nlohmann::json& j) {
    HermitianMatrixSequence seq;
    const auto p = j.at("p").get<Eigen::Index>();
    for (const auto& mat : j.at("matrices")) {
        CMat m(p, p);
        for (Eigen::Index i = 0; i < p; ++i)
            for (Eigen::Index jj = 0; jj < p; ++jj) {
                const auto& pair = mat.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(jj));
                m(i, jj) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
            }
        seq.matrices.push_back(std::move(m));
    }
    return seq;
}

nlohmann::json to_json(const Graph& graph) {
    nlohmann::json j;
    j["p"] = graph.node_count();
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [k, l] : graph.edges()) edges.push_back(nlohmann::json::array({k + 1, l + 1}));
    j["edges"] = std::move(edges);
    return j;
}

Graph graph_from_json(const nlohmann::json& j) {
    Graph graph(j.at("p").get<int>());
    for (const auto& e : j.at("edges")) graph.add_edge(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
    return graph;
}

std::string edge_list_text(const Graph& graph) {
    std::string out;
    for (const auto& [k, l] : graph.edges()) {
        out += std::to_string(k + 1);
        out += ' ';
        out += std::to_string(l + 1);
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const ExperimentConfig& config) {
    nlohmann::json j;
    j["model"] = to_json(config.model);
    j["N"] = config.sample_count;
    j["F"] = config.frequency_count;
    j["window"] = to_json(config.window);
    j["lambda_grid"] = config.lambda_multipliers;
    j["eta"] = config.eta;
    j["M"] = config.run_count;
    j["master_seed"] = config.master_seed;
    j["phi_min"] = config.phi_min;
    j["rho_min"] = config.rho_min;
    j["s_max"] = config.s_max;
    j["solver_tol"] = config.solver_tol;
    j["solver_max_iter"] = config.solver_max_iter;
    return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    config.model = model_from_json(j.at("model"));
    config.sample_count = j.at("N").get<int>();
    config.frequency_count = j.at("F").get<int>();
    config.window = window_from_json(j.at("window"));
    config.lambda_multipliers = j.at("lambda_grid").get<std::vector<double>>();
    config.eta = j.at("eta").get<double>();
    config.run_count = j.at("M").get<int>();
    config.master_seed = j.at("master_seed").get<std::uint64_t>();
    config.phi_min = j.value("phi_min", config.phi_min);
    config.rho_min = j.value("rho_min", config.rho_min);
    config.s_max = j.value("s_max", config.s_max);
    config.solver_tol = j.value("solver_tol", config.solver_tol);
    config.solver_max_iter = j.value("solver_max_iter", config.solver_max_iter);
    return config;
}

nlohmann::json to_json(const TheoremPrescription& prescription) {
    nlohmann::json j;
    j["lambda"] = prescription.lambda;
    j["eta"] = prescription.eta;
    j["kappa"] = prescription.kappa;
    j["N_threshold"] = prescription.n_threshold;
    j["mu_h1_bound"] = prescription.mu_h1_bound;
    j["sample_size_ok"] = prescription.sample_size_ok;
    j["smoothness_ok"] = prescription.smoothness_ok;
    return j;
}

std::string samples_csv(const Mat& samples) {
    std::string out;
    out.reserve(static_cast<std::size_t>(samples.size()) * 20);
    for (Eigen::Index i = 0; i < samples.rows(); ++i) {
        for (Eigen::Index j = 0; j < samples.cols(); ++j) {
            if (j > 0) out += ',';
            out += format_double(samples(i, j));
        }
        out += '\n';
    }
    return out;
}

Mat samples_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            const std::size_t comma = line.find(',', pos);
            const std::string field = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            std::size_t consumed = 0;
            double v;
            try {
                v = std::stod(field, &consumed);
            } catch (const std::exception&) {
                throw std::invalid_argument("samples_from_csv: non-numeric field '" + field + "'");
            }
            if (consumed == 0) throw std::invalid_argument("samples_from_csv: empty field");
            row.push_back(v);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::invalid_argument("samples_from_csv: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("samples_from_csv: no data rows");
    Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
    out << content;
    if (!out) throw std::invalid_argument("failed writing file: " + path);
}

ExperimentConfig default_roc_config() {
    ExperimentConfig config;
    config.model = fir_random_cig_model(64, 3, 0.25, {1.0, 0.5}, 7);
    config.sample_count = 256;
    config.frequency_count = 4;
    config.window = WindowFunction::gaussian_window(44.0, config.sample_count - 1);
    config.eta = 0.25;
    config.run_count = 10;
    config.master_seed = 1;
    config.phi_min = 0.0616;
    config.rho_min = 0.5;
    config.s_max = 3;
    config.lambda_multipliers.clear();
    for (int k = 0; k < 25; ++k) config.lambda_multipliers.push_back(std::pow(10.0, -3.0 + 6.0 * k / 24.0));
    return config;
}

}  // namespace scig
