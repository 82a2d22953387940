#include "scig/process.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "scig/errors.hpp"
#include "scig/rng.hpp"
#include "scig/spectral.hpp"

namespace scig {

namespace {

Mat cholesky_factor(const Mat& m, const char* what) {
    Eigen::LLT<Mat> llt(m);
    if (llt.info() != Eigen::Success) throw ModelError(std::string(what) + ": matrix is not positive definite");
    return llt.matrixL();
}

Complex transfer_value(const std::vector<double>& taps, double theta) {
    Complex g = 0.0;
    for (std::size_t m = 0; m < taps.size(); ++m)
        g += taps[m] * std::polar(1.0, -2.0 * std::numbers::pi * theta * static_cast<double>(m));
    return g;
}

}  // namespace

FirProcessModel::FirProcessModel(std::vector<double> taps, Mat innovation_cov)
    : taps_(std::move(taps)), innovation_cov_(std::move(innovation_cov)) {
    if (taps_.empty()) throw ModelError("FirProcessModel: empty filter");
    if (innovation_cov_.rows() != innovation_cov_.cols() || innovation_cov_.rows() == 0)
        throw ModelError("FirProcessModel: innovation covariance must be square and nonempty");
    if (max_abs(Mat(innovation_cov_ - innovation_cov_.transpose())) >
        1e-10 * std::max(max_abs(innovation_cov_), 1e-300))
        throw ModelError("FirProcessModel: innovation covariance must be symmetric");
    cholesky_factor(innovation_cov_, "FirProcessModel");

    constexpr int kGridProbe = 1024;
    double min_power = std::numeric_limits<double>::infinity();
    for (int f = 0; f < kGridProbe; ++f)
        min_power = std::min(min_power, transfer_power(static_cast<double>(f) / kGridProbe));
    if (!(min_power > 1e-8))
        throw ModelError("FirProcessModel: transfer magnitude not bounded away from zero");
}

double FirProcessModel::transfer_power(double theta) const {
    return std::norm(transfer_value(taps_, theta));
}

Var1ProcessModel::Var1ProcessModel(Mat transition, double noise_var)
    : transition_(std::move(transition)), noise_var_(noise_var) {
    if (transition_.rows() != transition_.cols() || transition_.rows() == 0)
        throw ModelError("Var1ProcessModel: transition matrix must be square and nonempty");
    if (noise_var_ <= 0.0) throw ModelError("Var1ProcessModel: noise variance must be positive");
    const double scale = std::max(max_abs(transition_), 1e-300);
    if (max_abs(Mat(transition_ - transition_.transpose())) > 1e-10 * scale)
        throw ModelError("Var1ProcessModel: transition matrix must be symmetric");

    const int p = dimension();
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            const double a = transition_(i, j);
            if (a == 0.0) continue;
            if (a < 0.0) throw ModelError("Var1ProcessModel: transition entries must be nonnegative");
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
    }
    if (hi > 0.0) {
        if (hi - lo > 1e-10 * hi)
            throw ModelError("Var1ProcessModel: nonzero transition entries must share one value");
        coupling_ = hi;
    }

    Eigen::SelfAdjointEigenSolver<Mat> es(transition_);
    if (es.info() != Eigen::Success) throw NumericError("Var1ProcessModel: eigendecomposition failed");
    if (es.eigenvalues().cwiseAbs().maxCoeff() >= 1.0)
        throw ModelError("Var1ProcessModel: spectral radius must be below one");
}

Var1ProcessModel::Var1ProcessModel(const Graph& dependency, double coupling, double noise_var)
    : Var1ProcessModel(
          [&] {
              if (coupling <= 0.0) throw ModelError("Var1ProcessModel: coupling must be positive");
              Mat a = Mat::Zero(dependency.node_count(), dependency.node_count());
              for (const auto& [k, l] : dependency.edges()) {
                  a(k, l) = coupling;
                  a(l, k) = coupling;
              }
              return a;
          }(),
          noise_var) {}

int Var1ProcessModel::dependency_max_degree() const {
    const int p = dimension();
    int best = 0;
    for (int i = 0; i < p; ++i) {
        int deg = 0;
        for (int j = 0; j < p; ++j)
            if (i != j && transition_(i, j) != 0.0) ++deg;
        best = std::max(best, deg);
    }
    return best;
}

Mat Var1ProcessModel::stationary_cov() const {
    // Sigma = A Sigma A^T + s2 I; in the eigenbasis of the symmetric A the
    // solution is diagonal with entries s2 / (1 - lambda_i^2).
    Eigen::SelfAdjointEigenSolver<Mat> es(transition_);
    if (es.info() != Eigen::Success) throw NumericError("stationary_cov: eigendecomposition failed");
    Vec d = es.eigenvalues();
    Vec s(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) s(i) = noise_var_ / (1.0 - d(i) * d(i));
    Mat out = es.eigenvectors() * s.asDiagonal() * es.eigenvectors().transpose();
    return (out + out.transpose()) / 2.0;
}

int dimension(const ProcessModel& model) {
    return std::visit([](const auto& m) { return m.dimension(); }, model);
}

namespace {

Mat simulate_fir(const FirProcessModel& model, int n, std::uint64_t seed) {
    const int p = model.dimension();
    const int filter_len = static_cast<int>(model.taps().size());
    const Mat chol = cholesky_factor(model.innovation_cov(), "simulate");
    GaussianSampler rng(seed);

    // innovations e[1-(L-1)] .. e[N]; index shift makes the start stationary
    const int total = n + filter_len - 1;
    Mat innovations(total, p);
    for (int t = 0; t < total; ++t) innovations.row(t) = (chol * rng.vector(p)).transpose();

    Mat out = Mat::Zero(n, p);
    for (int t = 0; t < n; ++t)
        for (int m = 0; m < filter_len; ++m)
            out.row(t) += model.taps()[static_cast<std::size_t>(m)] * innovations.row(t + filter_len - 1 - m);
    return out;
}

Mat simulate_var1(const Var1ProcessModel& model, int n, std::uint64_t seed) {
    const int p = model.dimension();
    GaussianSampler rng(seed);
    const Mat chol_stat = cholesky_factor(model.stationary_cov(), "simulate");
    const double noise_sd = std::sqrt(model.noise_var());

    Mat out(n, p);
    Vec state = chol_stat * rng.vector(p);
    out.row(0) = state.transpose();
    for (int t = 1; t < n; ++t) {
        state = model.transition() * state + noise_sd * rng.vector(p);
        out.row(t) = state.transpose();
    }
    return out;
}

}  // namespace

Mat simulate(const ProcessModel& model, int sample_count, std::uint64_t seed) {
    if (sample_count < 1) throw std::invalid_argument("simulate: need at least one sample");
    return std::visit(
        [&](const auto& m) -> Mat {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, FirProcessModel>)
                return simulate_fir(m, sample_count, seed);
            else
                return simulate_var1(m, sample_count, seed);
        },
        model);
}

CMat true_sdm_at(const ProcessModel& model, double theta) {
    return std::visit(
        [&](const auto& m) -> CMat {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, FirProcessModel>) {
                const double power = m.transfer_power(theta);
                if (!(power > 1e-12)) throw ModelError("true_sdm: singular transfer factor");
                return power * m.innovation_cov().template cast<Complex>();
            } else {
                const int p = m.dimension();
                const Complex phase = std::polar(1.0, -2.0 * std::numbers::pi * theta);
                const CMat transition = m.transition().template cast<Complex>();
                CMat b = CMat::Identity(p, p) - phase * transition;
                CMat factor = b * b.adjoint();
                Eigen::LLT<CMat> llt(factor);
                if (llt.info() != Eigen::Success) throw ModelError("true_sdm: singular factor");
                CMat s = m.noise_var() * llt.solve(CMat::Identity(p, p));
                return (s + s.adjoint().eval()) / 2.0;
            }
        },
        model);
}

HermitianMatrixSequence true_sdm(const ProcessModel& model, int F) {
    if (F < 1) throw std::invalid_argument("true_sdm: need F >= 1");
    HermitianMatrixSequence out;
    out.matrices.reserve(static_cast<std::size_t>(F));
    for (int f = 0; f < F; ++f) out.matrices.push_back(true_sdm_at(model, static_cast<double>(f) / F));
    return out;
}

Graph true_cig(const ProcessModel& model, int F, double tol) {
    const HermitianMatrixSequence sdm = true_sdm(model, F);
    const int p = sdm.dimension();

    std::vector<CMat> inverses;
    double scale = 0.0;
    for (const auto& s : sdm.matrices) {
        Eigen::LLT<CMat> llt(s);
        if (llt.info() != Eigen::Success) throw ModelError("true_cig: singular SDM on the grid");
        CMat inv = llt.solve(CMat::Identity(p, p));
        scale = std::max(scale, max_abs(inv));
        inverses.push_back(std::move(inv));
    }

    Graph graph(p);
    for (int k = 0; k < p; ++k)
        for (int l = k + 1; l < p; ++l) {
            double strength = 0.0;
            for (const auto& inv : inverses) strength = std::max(strength, std::abs(inv(k, l)));
            if (strength > tol * scale) graph.add_edge(k, l);
        }
    return graph;
}

Mat analytic_acf(const ProcessModel& model, int lag) {
    if (lag < 0) throw std::invalid_argument("analytic_acf: lag must be nonnegative");
    return std::visit(
        [&](const auto& m) -> Mat {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, FirProcessModel>) {
                const auto& g = m.taps();
                const int len = static_cast<int>(g.size());
                if (lag >= len) return Mat::Zero(m.dimension(), m.dimension());
                double autocorr = 0.0;
                for (int j = 0; j + lag < len; ++j) autocorr += g[static_cast<std::size_t>(j + lag)] * g[static_cast<std::size_t>(j)];
                return autocorr * m.innovation_cov();
            } else {
                Mat r = m.stationary_cov();
                for (int i = 0; i < lag; ++i) r = m.transition() * r;
                return r;
            }
        },
        model);
}

Var1ClassParameters class_parameters_var1(const Var1ProcessModel& model) {
    const double a = model.coupling();
    const int d_max = model.dependency_max_degree();
    if (d_max < 1 || a <= 0.0) throw ModelError("class_parameters_var1: dependency graph is empty");
    if (a > 1.0 / (2.0 * d_max)) throw ModelError("class_parameters_var1: coupling exceeds 1/(2 d_max)");
    const double s2 = model.noise_var();
    return Var1ClassParameters{d_max * d_max, a, s2 / 4.0, s2 / 4.0, 4.0 * s2};
}

Graph random_bounded_degree_graph(int p, int max_degree, std::uint64_t seed) {
    if (p < 2) throw std::invalid_argument("random_bounded_degree_graph: need p >= 2");
    if (max_degree < 1) throw std::invalid_argument("random_bounded_degree_graph: need max_degree >= 1");

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(p) * (p - 1) / 2);
    for (int k = 0; k < p; ++k)
        for (int l = k + 1; l < p; ++l) pairs.emplace_back(k, l);
    std::mt19937_64 engine(seed);
    std::shuffle(pairs.begin(), pairs.end(), engine);

    Graph graph(p);
    std::vector<int> degree(static_cast<std::size_t>(p), 0);
    for (const auto& [k, l] : pairs) {
        if (degree[static_cast<std::size_t>(k)] >= max_degree || degree[static_cast<std::size_t>(l)] >= max_degree)
            continue;
        graph.add_edge(k, l);
        ++degree[static_cast<std::size_t>(k)];
        ++degree[static_cast<std::size_t>(l)];
    }
    return graph;
}

FirProcessModel fir_random_cig_model(int p, int max_degree, double coupling, std::vector<double> taps,
                                     std::uint64_t graph_seed) {
    if (!(coupling > 0.0) || coupling * max_degree >= 1.0)
        throw ModelError("fir_random_cig_model: need 0 < coupling * max_degree < 1 for a valid precision matrix");
    const Graph graph = random_bounded_degree_graph(p, max_degree, graph_seed);
    Mat precision = Mat::Identity(p, p);
    for (const auto& [k, l] : graph.edges()) {
        precision(k, l) = coupling;
        precision(l, k) = coupling;
    }
    Eigen::LLT<Mat> llt(precision);
    if (llt.info() != Eigen::Success) throw ModelError("fir_random_cig_model: precision matrix not positive definite");
    Mat cov = llt.solve(Mat::Identity(p, p));
    return FirProcessModel(std::move(taps), (cov + cov.transpose()) / 2.0);
}

}  // namespace scig
