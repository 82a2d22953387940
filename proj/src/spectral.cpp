#include "scig/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "scig/errors.hpp"

namespace scig {

double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const CMat& m, double rel_tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = std::max(max_abs(m), 1e-300);
    return max_abs(CMat(m - m.adjoint())) <= rel_tol * scale;
}

AcfSequence sample_acf(const Mat& samples, int max_lag) {
    const auto n = samples.rows();
    const auto p = samples.cols();
    if (n == 0 || p == 0) throw std::invalid_argument("sample_acf: empty sample set");
    if (max_lag < 0 || max_lag >= n) throw std::invalid_argument("sample_acf: need 0 <= max_lag <= N-1");
    if (!samples.allFinite()) throw std::invalid_argument("sample_acf: non-finite samples");

    AcfSequence acf;
    acf.lags.reserve(static_cast<std::size_t>(max_lag) + 1);
    for (int m = 0; m <= max_lag; ++m) {
        const auto len = n - m;
        // sum_n x[n+m] x[n]^T with rows holding the time steps
        Mat r = samples.middleRows(m, len).transpose() * samples.middleRows(0, len);
        acf.lags.push_back(r / static_cast<double>(n));
    }
    return acf;
}

AcfSequence sample_acf(const std::vector<Vec>& samples, int max_lag) {
    if (samples.empty()) throw std::invalid_argument("sample_acf: empty sample set");
    const auto p = samples.front().size();
    Mat stacked(static_cast<Eigen::Index>(samples.size()), p);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].size() != p) throw std::invalid_argument("sample_acf: inconsistent sample dimension");
        stacked.row(static_cast<Eigen::Index>(i)) = samples[i].transpose();
    }
    return sample_acf(stacked, max_lag);
}

HermitianMatrixSequence blackman_tukey(const AcfSequence& acf, const WindowFunction& window, int F) {
    if (F < 1) throw std::invalid_argument("blackman_tukey: need F >= 1");
    if (acf.lags.empty()) throw std::invalid_argument("blackman_tukey: empty ACF");
    if (window.support > acf.max_lag())
        throw std::invalid_argument("blackman_tukey: window support exceeds available lags");

    const int p = acf.dimension();
    HermitianMatrixSequence out;
    out.matrices.reserve(static_cast<std::size_t>(F));
    for (int f = 0; f < F; ++f) {
        const double theta = static_cast<double>(f) / F;
        CMat s = window.value(0) * acf.at_lag(0).cast<Complex>();
        for (int m = 1; m <= window.support; ++m) {
            const double w = window.value(m);
            if (w == 0.0) continue;
            const Complex phase = std::polar(1.0, -2.0 * std::numbers::pi * theta * m);
            // w[m] R[m] e^{-j2pi theta m} + w[m] R[m]^T e^{+j2pi theta m}
            s += (w * phase) * acf.at_lag(m).cast<Complex>();
            s += (w * std::conj(phase)) * acf.at_lag(m).transpose().cast<Complex>();
        }
        out.matrices.emplace_back((s + s.adjoint().eval()) / 2.0);
    }
    return out;
}

CMat psd_project(const CMat& m, double floor) {
    if (!m.allFinite()) throw NumericError("psd_project: non-finite input");
    Eigen::SelfAdjointEigenSolver<CMat> es(m);
    if (es.info() != Eigen::Success) throw NumericError("psd_project: eigendecomposition failed");
    Vec d = es.eigenvalues();
    for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::max(d(i), floor);
    CMat out = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
    return (out + out.adjoint().eval()) / 2.0;
}

HermitianMatrixSequence psd_project(const HermitianMatrixSequence& seq, double floor) {
    HermitianMatrixSequence out;
    out.matrices.reserve(seq.matrices.size());
    for (const auto& m : seq.matrices) out.matrices.push_back(psd_project(m, floor));
    return out;
}

NodeRegressionInputs extract_node_inputs(const HermitianMatrixSequence& seq, int node) {
    const int p = seq.dimension();
    if (node < 0 || node >= p) throw std::invalid_argument("extract_node_inputs: node index out of range");

    std::vector<int> others;
    others.reserve(static_cast<std::size_t>(p) - 1);
    for (int i = 0; i < p; ++i)
        if (i != node) others.push_back(i);

    NodeRegressionInputs out;
    out.node = node;
    for (const auto& s : seq.matrices) {
        CMat g(p - 1, p - 1);
        CVec c(p - 1);
        for (int i = 0; i < p - 1; ++i) {
            c(i) = s(others[static_cast<std::size_t>(i)], node);
            for (int j = 0; j < p - 1; ++j)
                g(i, j) = s(others[static_cast<std::size_t>(i)], others[static_cast<std::size_t>(j)]);
        }
        out.gram.push_back(std::move(g));
        out.cross.push_back(std::move(c));
    }
    return out;
}

CMat hermitian_sqrt(const CMat& m) {
    if (!m.allFinite()) throw NumericError("hermitian_sqrt: non-finite input");
    Eigen::SelfAdjointEigenSolver<CMat> es(m);
    if (es.info() != Eigen::Success) throw NumericError("hermitian_sqrt: eigendecomposition failed");
    Vec d = es.eigenvalues();
    const double scale = std::max(max_abs(m), 1e-300);
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (d(i) < -1e-9 * scale) throw NumericError("hermitian_sqrt: input is not positive semidefinite");
        d(i) = std::sqrt(std::max(d(i), 0.0));
    }
    CMat out = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
    return (out + out.adjoint().eval()) / 2.0;
}

}  // namespace scig
