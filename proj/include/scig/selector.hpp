#pragma once

#include <vector>

#include "scig/mlasso.hpp"
#include "scig/process.hpp"
#include "scig/types.hpp"

namespace scig {

struct SelectorConfig {
    int frequency_count = 4;  ///< F
    WindowFunction window;
    double lambda = 1e-3;
    double eta = 0.25;
    double solver_tol = 1e-6;
    int solver_max_iter = 20000;
};

enum class EdgeRule { Or, And };

struct NeighborhoodEstimate {
    int node = 0;
    std::vector<int> selected;  ///< node indices with group norm > eta
    Vec group_norms;            ///< (p-1) entries, ordered by the other nodes ascending
    bool solver_converged = true;
};

/// Full estimation front end: sample ACF, Blackman-Tukey transform, PSD
/// projection at floor 0. The window support is truncated to N-1 when it
/// exceeds the available lags.
HermitianMatrixSequence estimate_sdm(const Mat& samples, const WindowFunction& window, int F);

/// One neighborhood regression against an already-estimated SDM.
NeighborhoodEstimate select_neighborhood_from_sdm(const HermitianMatrixSequence& sdm, int node,
                                                  const SelectorConfig& config);

/// Neighborhood of `node` estimated from raw samples (estimate_sdm followed
/// by the group-penalized regression and strict thresholding at eta).
/// A non-converged solve yields an empty neighborhood with
/// solver_converged = false.
NeighborhoodEstimate select_neighborhood(const Mat& samples, int node, const SelectorConfig& config);

/// Runs the neighborhood regression for every node and combines the
/// estimates into an undirected edge set (OR rule by default).
Graph select_graph(const Mat& samples, const SelectorConfig& config, EdgeRule rule = EdgeRule::Or);
Graph select_graph_from_sdm(const HermitianMatrixSequence& sdm, const SelectorConfig& config,
                            EdgeRule rule = EdgeRule::Or);

/// Oracle neighborhood from the analytic SDM, computed along two
/// independent routes and cross-checked:
///   (a) per frequency, split S^{1/2} into the node's column y and the
///       remaining columns X, and take beta = pinv(X) y;
///   (b) beta = -[S^{-1}]_{\r,r} / [S^{-1}]_{r,r}.
/// Returns the union over frequencies of the supports (1e-9 relative
/// threshold). Disagreement beyond 1e-8 raises NumericError.
std::vector<int> neighborhood_from_true_sdm(const ProcessModel& model, int node, int F);

}  // namespace scig
