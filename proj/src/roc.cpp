#include "scig/roc.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "scig/errors.hpp"
#include "scig/io.hpp"
#include "scig/spectral.hpp"

namespace scig {

double ExperimentConfig::base_lambda() const {
    return phi_min * phi_min * rho_min / (18.0 * static_cast<double>(s_max) * frequency_count);
}

std::pair<double, double> pair_detection_rates(const Graph& truth, const Graph& estimate) {
    const int p = truth.node_count();
    if (estimate.node_count() != p) throw std::invalid_argument("pair_detection_rates: node counts differ");
    const long total_pairs = static_cast<long>(p) * (p - 1) / 2;
    const long edge_pairs = static_cast<long>(truth.edge_count());
    const long non_edge_pairs = total_pairs - edge_pairs;

    long false_alarms = 0, detections = 0;
    for (const auto& [k, l] : estimate.edges()) {
        if (truth.has_edge(k, l))
            ++detections;
        else
            ++false_alarms;
    }
    const double p_fa = non_edge_pairs > 0 ? static_cast<double>(false_alarms) / non_edge_pairs : 0.0;
    const double p_d = edge_pairs > 0 ? static_cast<double>(detections) / edge_pairs : 0.0;
    return {p_fa, p_d};
}

std::vector<RocPoint> run_roc_experiment(const ExperimentConfig& config) {
    if (config.run_count < 1) throw std::invalid_argument("roc: need at least one run");
    if (config.lambda_multipliers.empty()) throw std::invalid_argument("roc: empty lambda grid");
    for (double c : config.lambda_multipliers)
        if (!(c > 0.0)) throw std::invalid_argument("roc: lambda multipliers must be positive");

    constexpr int kCigGrid = 128;  // ground-truth support detection grid
    const Graph truth = true_cig(config.model, kCigGrid);
    const int p = truth.node_count();
    if (truth.edge_count() == 0) throw ModelError("roc: ground-truth graph has no edges");
    if (static_cast<long>(truth.edge_count()) == static_cast<long>(p) * (p - 1) / 2)
        throw ModelError("roc: ground-truth graph is complete, no false alarms possible");

    std::vector<double> multipliers = config.lambda_multipliers;
    std::sort(multipliers.begin(), multipliers.end());
    const double base = config.base_lambda();
    const std::size_t grid_size = multipliers.size();
    const int runs = config.run_count;

    // one row of (P_fa, P_d) per run, one column per lambda
    std::vector<std::vector<std::pair<double, double>>> per_run(
        static_cast<std::size_t>(runs), std::vector<std::pair<double, double>>(grid_size));
    std::atomic<long> failed_solves{0};
    std::atomic<int> next_run{0};

    auto worker = [&]() {
        for (;;) {
            const int i = next_run.fetch_add(1);
            if (i >= runs) return;
            const Mat samples = simulate(config.model, config.sample_count, config.master_seed + 1 + i);
            const HermitianMatrixSequence sdm = estimate_sdm(samples, config.window, config.frequency_count);

            std::vector<NodeRegressionInputs> inputs;
            inputs.reserve(static_cast<std::size_t>(p));
            for (int r = 0; r < p; ++r) inputs.push_back(extract_node_inputs(sdm, r));

            for (std::size_t li = 0; li < grid_size; ++li) {
                const double lambda = multipliers[li] * base;
                Graph graph(p);
                std::vector<std::vector<int>> selected(static_cast<std::size_t>(p));
                for (int r = 0; r < p; ++r) {
                    auto [beta, report] =
                        solve(inputs[static_cast<std::size_t>(r)], lambda, config.solver_tol, config.solver_max_iter);
                    if (!report.converged) {
                        ++failed_solves;  // counted as an empty neighborhood
                        continue;
                    }
                    for (int g = 0; g < p - 1; ++g) {
                        if (beta.group_norm(g) > config.eta)
                            selected[static_cast<std::size_t>(r)].push_back(g < r ? g : g + 1);
                    }
                }
                for (int k = 0; k < p; ++k)
                    for (int l : selected[static_cast<std::size_t>(k)])
                        if (!graph.has_edge(k, l)) graph.add_edge(k, l);
                per_run[static_cast<std::size_t>(i)][li] = pair_detection_rates(truth, graph);
            }
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned thread_count = std::min<unsigned>(hw, static_cast<unsigned>(runs));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (failed_solves.load() > 0)
        std::fprintf(stderr, "roc: %ld non-converged solves were counted as empty neighborhoods\n",
                     failed_solves.load());

    std::vector<RocPoint> points;
    points.reserve(grid_size);
    for (std::size_t li = 0; li < grid_size; ++li) {
        RocPoint point;
        point.lambda = multipliers[li] * base;
        for (int i = 0; i < runs; ++i) {
            point.p_fa += per_run[static_cast<std::size_t>(i)][li].first;
            point.p_d += per_run[static_cast<std::size_t>(i)][li].second;
        }
        point.p_fa /= runs;
        point.p_d /= runs;
        points.push_back(point);
    }
    return points;
}

std::string roc_csv(const ExperimentConfig& config, const std::vector<RocPoint>& points) {
    std::vector<double> multipliers = config.lambda_multipliers;
    std::sort(multipliers.begin(), multipliers.end());
    if (multipliers.size() != points.size()) throw std::invalid_argument("roc_csv: grid/point count mismatch");

    std::string out = "lambda,c1,P_fa,P_d\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        out += format_double(points[i].lambda);
        out += ',';
        out += format_double(multipliers[i]);
        out += ',';
        out += format_double(points[i].p_fa);
        out += ',';
        out += format_double(points[i].p_d);
        out += '\n';
    }
    return out;
}

double roc_auc(const std::vector<RocPoint>& points) {
    std::vector<std::pair<double, double>> curve;
    curve.reserve(points.size() + 2);
    curve.emplace_back(0.0, 0.0);
    for (const auto& pt : points) curve.emplace_back(pt.p_fa, pt.p_d);
    curve.emplace_back(1.0, 1.0);
    std::sort(curve.begin(), curve.end());

    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        area += (curve[i].first - curve[i - 1].first) * (curve[i].second + curve[i - 1].second) / 2.0;
    return area;
}

}  // namespace scig
