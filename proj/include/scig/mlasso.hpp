#pragma once

#include <utility>

#include "scig/types.hpp"

namespace scig {

struct SolverReport {
    int iterations = 0;
    double final_objective = 0.0;
    double kkt_residual = 0.0;
    bool converged = false;
};

/// Value of the group-penalized quadratic
///   (1/F) sum_f [ beta^(f)^H G^(f) beta^(f) - 2 Re{c^(f)^H beta^(f)} ]
///   + lambda * ||beta||_{2,1}.
double objective(const NodeRegressionInputs& inputs, const GroupedCoefficients& beta, double lambda);

/// Proximal map of tau * ||.||_2: returns 0 when ||z|| <= tau,
/// otherwise (1 - tau/||z||) z.
CVec group_soft_threshold(const CVec& z, double tau);

/// Normalized group KKT residual of `beta` for the objective above.
/// Per group r' with stacked smooth gradient g_{r'} (entries
/// (2/F)[G^(f) beta^(f) - c^(f)]_{r'}):
///   active group:  || g_{r'} + lambda beta_{r'} / ||beta_{r'}|| ||_2
///   zero group:    max(0, ||g_{r'}||_2 - lambda)
/// The maximum over groups is divided by max(1, lambda).
double kkt_residual(const NodeRegressionInputs& inputs, const GroupedCoefficients& beta, double lambda);

/// Accelerated proximal gradient (fixed step 1/L, started at beta = 0) for
/// the group-penalized quadratic. L = (2/F) max_f lambda_max(G^(f)) is
/// obtained by power iteration. Stops when the KKT residual drops to `tol`;
/// hitting max_iter first is reported via converged = false, not thrown.
/// Requires every G^(f) Hermitian PSD and lambda >= 0.
std::pair<GroupedCoefficients, SolverReport> solve(const NodeRegressionInputs& inputs, double lambda,
                                                   double tol = 1e-6, int max_iter = 20000);

/// Largest eigenvalue of a Hermitian PSD matrix by power iteration.
double power_lambda_max(const CMat& m, int max_iter = 1000, double tol = 1e-13);

}  // namespace scig
