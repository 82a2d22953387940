#include "scig/cli.hpp"

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "scig/errors.hpp"
#include "scig/io.hpp"
#include "scig/process.hpp"
#include "scig/roc.hpp"
#include "scig/selector.hpp"
#include "scig/spectral.hpp"
#include "scig/theory.hpp"

namespace scig {

namespace {

struct WindowFlags {
    std::string kind = "gaussian";
    double width = 44.0;
    int support = -1;  ///< -1: use N-1

    void attach(CLI::App* cmd) {
        cmd->add_option("--window-kind", kind, "rectangular | bartlett | gaussian")
            ->check(CLI::IsMember({"rectangular", "bartlett", "gaussian"}));
        cmd->add_option("--window-width", width, "gaussian width (w[m] = exp(-m^2/width))");
        cmd->add_option("--window-support", support, "window half-length in lags (-1: N-1)");
    }

    WindowFunction build(int sample_count) const {
        const int s = support >= 0 ? support : sample_count - 1;
        if (kind == "rectangular") return WindowFunction::rectangular_window(s);
        if (kind == "bartlett") return WindowFunction::bartlett_window(s);
        return WindowFunction::gaussian_window(width, s);
    }
};

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-")
        std::cout << content;
    else
        write_text_file(out_path, content);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Conditional independence graphs of stationary vector time series from spectral estimates"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "simulate a model and write samples as CSV");
    std::string gen_model_path, gen_out;
    int gen_count = 256;
    std::uint64_t gen_seed = 1;
    generate->add_option("--model", gen_model_path, "model JSON file")->required();
    generate->add_option("--count,-N", gen_count, "number of time samples")->required();
    generate->add_option("--seed", gen_seed, "simulation seed")->required();
    generate->add_option("--out,-o", gen_out, "output CSV path (default stdout)");

    // estimate-sdm
    auto* estimate = app.add_subcommand("estimate-sdm", "Blackman-Tukey SDM estimate of a sample CSV");
    std::string est_samples_path, est_out;
    int est_freq = 4;
    WindowFlags est_window;
    estimate->add_option("--samples", est_samples_path, "samples CSV (rows = time)")->required();
    estimate->add_option("--frequencies,-F", est_freq, "number of grid frequencies")->required();
    est_window.attach(estimate);
    estimate->add_option("--out,-o", est_out, "output JSON path (default stdout)");

    // select-graph
    auto* select = app.add_subcommand("select-graph", "estimate the conditional independence graph");
    std::string sel_samples_path, sel_out, sel_json_out, sel_rule = "or";
    int sel_freq = 4;
    double sel_lambda = 0.0, sel_eta = 0.25, sel_tol = 1e-6;
    int sel_max_iter = 20000;
    WindowFlags sel_window;
    select->add_option("--samples", sel_samples_path, "samples CSV (rows = time)")->required();
    select->add_option("--frequencies,-F", sel_freq, "number of grid frequencies")->required();
    select->add_option("--lambda", sel_lambda, "group penalty weight")->required();
    select->add_option("--eta", sel_eta, "neighborhood threshold on group norms")->required();
    select->add_option("--solver-tol", sel_tol, "KKT tolerance");
    select->add_option("--solver-max-iter", sel_max_iter, "iteration cap");
    select->add_option("--rule", sel_rule, "edge combination rule")->check(CLI::IsMember({"or", "and"}));
    sel_window.attach(select);
    select->add_option("--out,-o", sel_out, "edge list output path (default stdout)");
    select->add_option("--json-out", sel_json_out, "optional JSON graph output path");

    // theory
    auto* theory = app.add_subcommand("theory", "analytic parameters and sample-size prescription for a model");
    std::string th_model_path, th_out;
    int th_freq = 4;
    double th_samples = 256.0, th_delta = 0.05;
    std::optional<double> th_phi, th_rho;
    std::optional<int> th_smax;
    int th_restarts = 20;
    WindowFlags th_window;
    theory->add_option("--model", th_model_path, "model JSON file")->required();
    theory->add_option("--frequencies,-F", th_freq, "number of grid frequencies")->required();
    theory->add_option("--count,-N", th_samples, "sample size to check against the threshold")->required();
    theory->add_option("--delta", th_delta, "failure probability budget");
    theory->add_option("--phi-min", th_phi, "compatibility constant (default: VAR1 closed form or optimizer estimate)");
    theory->add_option("--rho-min", th_rho, "minimum partial coherence (default: computed from the model)");
    theory->add_option("--s-max", th_smax, "maximum node degree (default: from the true graph)");
    theory->add_option("--phi-restarts", th_restarts, "restarts for the compatibility estimate");
    th_window.attach(theory);
    theory->add_option("--out,-o", th_out, "output JSON path (default stdout)");

    // roc
    auto* roc = app.add_subcommand("roc", "seeded lambda sweep producing a P_fa/P_d table");
    std::string roc_config_path, roc_out;
    bool roc_default = false;
    roc->add_option("--config", roc_config_path, "experiment config JSON");
    roc->add_flag("--write-default-config", roc_default, "print the default experiment config and exit");
    roc->add_option("--out,-o", roc_out, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*generate) {
            const ProcessModel model = model_from_json(nlohmann::json::parse(read_text_file(gen_model_path)));
            emit(gen_out, samples_csv(simulate(model, gen_count, gen_seed)));
            return 0;
        }

        if (*estimate) {
            const Mat samples = samples_from_csv(read_text_file(est_samples_path));
            const WindowFunction window = est_window.build(static_cast<int>(samples.rows()));
            const HermitianMatrixSequence sdm = estimate_sdm(samples, window, est_freq);
            emit(est_out, to_json(sdm).dump(2) + "\n");
            return 0;
        }

        if (*select) {
            const Mat samples = samples_from_csv(read_text_file(sel_samples_path));
            SelectorConfig config;
            config.frequency_count = sel_freq;
            config.window = sel_window.build(static_cast<int>(samples.rows()));
            config.lambda = sel_lambda;
            config.eta = sel_eta;
            config.solver_tol = sel_tol;
            config.solver_max_iter = sel_max_iter;
            const Graph graph =
                select_graph(samples, config, sel_rule == "and" ? EdgeRule::And : EdgeRule::Or);
            emit(sel_out, edge_list_text(graph));
            if (!sel_json_out.empty()) write_text_file(sel_json_out, to_json(graph).dump(2) + "\n");
            return 0;
        }

        if (*theory) {
            const ProcessModel model = model_from_json(nlohmann::json::parse(read_text_file(th_model_path)));
            const int p = dimension(model);
            const WindowFunction window = th_window.build(static_cast<int>(th_samples));

            ClassParameters params;
            if (std::holds_alternative<Var1ProcessModel>(model)) {
                const auto cls = class_parameters_var1(std::get<Var1ProcessModel>(model));
                params.s_max = cls.s_max;
                params.rho_min = cls.rho_min;
                params.phi_min = cls.phi_min;
                params.a_bound = cls.a_bound;
                params.b_bound = cls.b_bound;
            } else {
                // numeric eigenvalue bounds of the FIR spectral density
                double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
                constexpr int kProbe = 256;
                for (int f = 0; f < kProbe; ++f) {
                    const CMat s = true_sdm_at(model, static_cast<double>(f) / kProbe);
                    Eigen::SelfAdjointEigenSolver<CMat> es(s);
                    lo = std::min(lo, es.eigenvalues().minCoeff());
                    hi = std::max(hi, es.eigenvalues().maxCoeff());
                }
                params.a_bound = lo;
                params.b_bound = hi;
                const Graph cig = true_cig(model, 128);
                params.s_max = std::max(1, cig.max_degree());
            }
            if (th_smax) params.s_max = *th_smax;
            if (th_rho) {
                params.rho_min = *th_rho;
            } else if (std::holds_alternative<FirProcessModel>(model)) {
                const auto rho = min_partial_coherence(model, th_freq);
                if (!rho) throw ModelError("theory: model has no edges, rho_min undefined");
                params.rho_min = *rho;
            }
            if (th_phi) {
                params.phi_min = *th_phi;
            } else if (std::holds_alternative<FirProcessModel>(model)) {
                // upper estimate from the worst node, using the true SDM blocks
                const Graph cig = true_cig(model, 128);
                double phi = std::numeric_limits<double>::infinity();
                for (int r = 0; r < p; ++r) {
                    const auto neigh = cig.neighbors(r);
                    if (neigh.empty()) continue;
                    std::vector<int> support;
                    for (int other : neigh) support.push_back(other < r ? other : other - 1);
                    const auto inputs = extract_node_inputs(true_sdm(model, th_freq), r);
                    phi = std::min(phi, compatibility_constant_estimate(inputs, support, th_restarts, 1234));
                }
                if (!std::isfinite(phi)) throw ModelError("theory: model has no edges, phi_min undefined");
                params.phi_min = phi;
            }

            const double mu_h0 = acf_moment(model, h0_weight()).value;
            params.mu_h1 = acf_moment(model, h1_weight(window, static_cast<long>(th_samples))).value;

            const TheoremPrescription prescription =
                theorem1_prescription(params, th_freq, th_samples, p, th_delta, window);
            nlohmann::json j = to_json(prescription);
            j["mu_h0"] = mu_h0;
            j["mu_h1"] = params.mu_h1;
            j["inputs"] = {{"s_max", params.s_max},   {"rho_min", params.rho_min}, {"phi_min", params.phi_min},
                           {"A", params.a_bound},     {"B", params.b_bound},       {"F", th_freq},
                           {"N", th_samples},         {"p", p},                    {"delta", th_delta}};
            emit(th_out, j.dump(2) + "\n");
            return 0;
        }

        if (*roc) {
            if (roc_default) {
                emit(roc_out, to_json(default_roc_config()).dump(2) + "\n");
                return 0;
            }
            if (roc_config_path.empty()) {
                std::cerr << "roc: --config is required (or --write-default-config)\n";
                return 1;
            }
            const ExperimentConfig config = config_from_json(nlohmann::json::parse(read_text_file(roc_config_path)));
            const auto points = run_roc_experiment(config);
            emit(roc_out, roc_csv(config, points));
            return 0;
        }
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const ModelError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    return 1;
}

}  // namespace scig
