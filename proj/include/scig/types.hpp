#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace scig {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Undirected graph on p nodes without self-loops. Edges are stored
/// normalized as (k, l) with k < l; node indices are 0-based.
class Graph {
public:
    Graph() = default;
    explicit Graph(int node_count) : p_(node_count) {}

    int node_count() const { return p_; }

    void add_edge(int k, int l);
    bool has_edge(int k, int l) const;

    const std::set<std::pair<int, int>>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    std::vector<int> neighbors(int r) const;
    int degree(int r) const;
    int max_degree() const;

    bool operator==(const Graph& other) const = default;

private:
    int p_ = 0;
    std::set<std::pair<int, int>> edges_;
};

/// Lag-indexed autocovariance matrices R[m], m = 0..max_lag.
/// Negative lags are implied by R[-m] = R[m]^T (real-valued process).
struct AcfSequence {
    std::vector<Mat> lags;

    int dimension() const { return lags.empty() ? 0 : static_cast<int>(lags.front().rows()); }
    int max_lag() const { return static_cast<int>(lags.size()) - 1; }

    const Mat& at_lag(int m) const { return lags.at(static_cast<std::size_t>(m)); }
    /// R[m] for any sign of m.
    Mat at_signed_lag(int m) const {
        return m >= 0 ? lags.at(static_cast<std::size_t>(m))
                      : Mat(lags.at(static_cast<std::size_t>(-m)).transpose());
    }
};

enum class WindowKind { rectangular, bartlett, gaussian };

/// Symmetric lag window w[m] with w[0] = 1, w[m] = w[-m] >= 0 and
/// w[m] = 0 for |m| > support.
struct WindowFunction {
    WindowKind kind = WindowKind::rectangular;
    int support = 0;      ///< half-length in lags
    double width = 0.0;   ///< gaussian only: w[m] = exp(-m^2 / width)

    double value(long m) const;
    /// sum_{|m| <= support} |w[m]|
    double l1_norm() const;

    static WindowFunction rectangular_window(int support);
    static WindowFunction bartlett_window(int support);
    static WindowFunction gaussian_window(double width, int support);
};

/// F complex p x p Hermitian matrices sampled on the regular frequency grid
/// theta_f = f / F, f = 0..F-1.
struct HermitianMatrixSequence {
    std::vector<CMat> matrices;

    int dimension() const { return matrices.empty() ? 0 : static_cast<int>(matrices.front().rows()); }
    int frequency_count() const { return static_cast<int>(matrices.size()); }

    double grid_point(int f) const { return static_cast<double>(f) / frequency_count(); }
    const CMat& at(int f) const { return matrices.at(static_cast<std::size_t>(f)); }
};

/// Per-node regression blocks: for node r, gram[f] is the SDM at frequency f
/// with row/column r deleted, cross[f] is column r with entry r deleted.
struct NodeRegressionInputs {
    int node = 0;  ///< 0-based
    std::vector<CMat> gram;
    std::vector<CVec> cross;

    int frequency_count() const { return static_cast<int>(gram.size()); }
    int coefficient_count() const { return gram.empty() ? 0 : static_cast<int>(gram.front().rows()); }
};

/// Complex coefficient vector of length F * (p - 1), organized as p - 1
/// groups of F entries: group r' collects the r'-th coordinate of every
/// per-frequency vector. Stored as a (p - 1) x F matrix whose column f is
/// the frequency-f coefficient vector.
class GroupedCoefficients {
public:
    GroupedCoefficients() = default;
    GroupedCoefficients(int group_count, int frequency_count)
        : values_(CMat::Zero(group_count, frequency_count)) {}
    explicit GroupedCoefficients(CMat values) : values_(std::move(values)) {}

    int group_count() const { return static_cast<int>(values_.rows()); }
    int frequency_count() const { return static_cast<int>(values_.cols()); }

    Complex& operator()(int group, int f) { return values_(group, f); }
    Complex operator()(int group, int f) const { return values_(group, f); }

    CVec frequency_vector(int f) const { return values_.col(f); }
    CVec group_vector(int group) const { return values_.row(group).transpose(); }

    double group_norm(int group) const { return values_.row(group).norm(); }
    /// sum over groups of the Euclidean group norms
    double l21_norm() const;

    const CMat& matrix() const { return values_; }
    CMat& matrix() { return values_; }

private:
    CMat values_;
};

}  // namespace scig
