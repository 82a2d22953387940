#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scig/process.hpp"
#include "scig/selector.hpp"
#include "scig/types.hpp"

namespace scig {

/// A seeded multi-run lambda sweep. The regularizer for multiplier c1 is
/// c1 * base_lambda() with base_lambda() = phi_min^2 rho_min / (18 s_max F).
struct ExperimentConfig {
    ProcessModel model = FirProcessModel({1.0}, Mat::Identity(2, 2));
    int sample_count = 256;                    ///< N
    int frequency_count = 4;                   ///< F
    WindowFunction window;
    std::vector<double> lambda_multipliers;    ///< c1 grid, positive
    double eta = 0.25;
    int run_count = 10;                        ///< M
    std::uint64_t master_seed = 1;
    double phi_min = 0.0616;
    double rho_min = 0.5;
    int s_max = 3;
    double solver_tol = 1e-6;
    int solver_max_iter = 20000;

    double base_lambda() const;
};

struct RocPoint {
    double lambda = 0.0;
    double p_fa = 0.0;
    double p_d = 0.0;
};

/// False-alarm / detection fractions of one estimated graph against the
/// ground truth, over unordered node pairs.
std::pair<double, double> pair_detection_rates(const Graph& truth, const Graph& estimate);

/// Runs M seeded simulations per lambda (run i uses seed master_seed + i,
/// i = 1..M), applies the full selection pipeline, and averages the
/// per-run fractions. Points are returned sorted by lambda ascending.
/// Runs execute as independent tasks; the result does not depend on
/// scheduling.
std::vector<RocPoint> run_roc_experiment(const ExperimentConfig& config);

/// CSV rows "lambda,c1,P_fa,P_d" (17 significant digits, '.' decimal).
std::string roc_csv(const ExperimentConfig& config, const std::vector<RocPoint>& points);

/// Trapezoidal area under the (P_fa, P_d) curve with (0,0) and (1,1)
/// anchor points.
double roc_auc(const std::vector<RocPoint>& points);

}  // namespace scig
