#include "scig/selector.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scig/errors.hpp"
#include "scig/spectral.hpp"

namespace scig {

HermitianMatrixSequence estimate_sdm(const Mat& samples, const WindowFunction& window, int F) {
    const int n = static_cast<int>(samples.rows());
    if (n < 2) throw std::invalid_argument("estimate_sdm: need at least two samples");
    WindowFunction effective = window;
    effective.support = std::min(window.support, n - 1);
    const AcfSequence acf = sample_acf(samples, effective.support);
    return psd_project(blackman_tukey(acf, effective, F), 0.0);
}

NeighborhoodEstimate select_neighborhood_from_sdm(const HermitianMatrixSequence& sdm, int node,
                                                  const SelectorConfig& config) {
    const int p = sdm.dimension();
    if (p < 2) throw std::invalid_argument("select_neighborhood: need p >= 2");
    if (!(config.lambda > 0.0) || !(config.eta > 0.0))
        throw std::invalid_argument("select_neighborhood: lambda and eta must be positive");

    const NodeRegressionInputs inputs = extract_node_inputs(sdm, node);
    auto [beta, report] = solve(inputs, config.lambda, config.solver_tol, config.solver_max_iter);

    NeighborhoodEstimate estimate;
    estimate.node = node;
    estimate.solver_converged = report.converged;
    estimate.group_norms = Vec(p - 1);
    for (int g = 0; g < p - 1; ++g) estimate.group_norms(g) = beta.group_norm(g);

    // a failed solve contributes no neighbors, only the warning flag
    if (report.converged) {
        for (int g = 0; g < p - 1; ++g) {
            if (estimate.group_norms(g) > config.eta) {
                const int other = g < node ? g : g + 1;
                estimate.selected.push_back(other);
            }
        }
    }
    return estimate;
}

NeighborhoodEstimate select_neighborhood(const Mat& samples, int node, const SelectorConfig& config) {
    return select_neighborhood_from_sdm(estimate_sdm(samples, config.window, config.frequency_count), node,
                                        config);
}

Graph select_graph_from_sdm(const HermitianMatrixSequence& sdm, const SelectorConfig& config, EdgeRule rule) {
    const int p = sdm.dimension();
    std::vector<NeighborhoodEstimate> estimates;
    estimates.reserve(static_cast<std::size_t>(p));
    for (int r = 0; r < p; ++r) estimates.push_back(select_neighborhood_from_sdm(sdm, r, config));

    Graph graph(p);
    for (int k = 0; k < p; ++k)
        for (int l = k + 1; l < p; ++l) {
            const auto& nk = estimates[static_cast<std::size_t>(k)].selected;
            const auto& nl = estimates[static_cast<std::size_t>(l)].selected;
            const bool k_selects_l = std::find(nk.begin(), nk.end(), l) != nk.end();
            const bool l_selects_k = std::find(nl.begin(), nl.end(), k) != nl.end();
            const bool edge = rule == EdgeRule::Or ? (k_selects_l || l_selects_k) : (k_selects_l && l_selects_k);
            if (edge) graph.add_edge(k, l);
        }
    return graph;
}

Graph select_graph(const Mat& samples, const SelectorConfig& config, EdgeRule rule) {
    return select_graph_from_sdm(estimate_sdm(samples, config.window, config.frequency_count), config, rule);
}

std::vector<int> neighborhood_from_true_sdm(const ProcessModel& model, int node, int F) {
    const HermitianMatrixSequence sdm = true_sdm(model, F);
    const int p = sdm.dimension();
    if (node < 0 || node >= p) throw std::invalid_argument("neighborhood_from_true_sdm: node out of range");

    std::vector<CVec> betas;
    betas.reserve(static_cast<std::size_t>(F));
    double scale = 0.0;
    for (int f = 0; f < F; ++f) {
        const CMat& s = sdm.at(f);

        // route (a): split the Hermitian square root into the node's column
        // and the rest, then solve the least-squares projection
        const CMat root = hermitian_sqrt(s);
        CVec y = root.col(node);
        CMat x(p, p - 1);
        for (int j = 0, col = 0; j < p; ++j) {
            if (j == node) continue;
            x.col(col++) = root.col(j);
        }
        const CVec beta_root = x.completeOrthogonalDecomposition().solve(y);

        // route (b): block-inverse identity on S^{-1}
        Eigen::LLT<CMat> llt(s);
        if (llt.info() != Eigen::Success) throw ModelError("neighborhood_from_true_sdm: singular SDM");
        const CMat inv = llt.solve(CMat::Identity(p, p));
        const Complex pivot = inv(node, node);
        if (!(pivot.real() > 0.0)) throw NumericError("neighborhood_from_true_sdm: nonpositive inverse diagonal");
        CVec beta_block(p - 1);
        for (int j = 0, row = 0; j < p; ++j) {
            if (j == node) continue;
            beta_block(row++) = -inv(j, node) / pivot;
        }

        const double mismatch = (beta_root - beta_block).norm();
        if (mismatch > 1e-8 * std::max(1.0, beta_block.norm()))
            throw NumericError("neighborhood_from_true_sdm: square-root and block-inverse routes disagree");

        scale = std::max(scale, beta_block.cwiseAbs().maxCoeff());
        betas.push_back(std::move(beta_block));
    }

    std::vector<int> selected;
    for (int g = 0; g < p - 1; ++g) {
        double strength = 0.0;
        for (const auto& b : betas) strength = std::max(strength, std::abs(b(g)));
        if (strength > 1e-9 * scale) selected.push_back(g < node ? g : g + 1);
    }
    return selected;
}

}  // namespace scig
