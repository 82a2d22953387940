#include "scig/theory.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "scig/errors.hpp"
#include "scig/mlasso.hpp"
#include "scig/spectral.hpp"

namespace scig {

LagWeight h0_weight() {
    return [](long m) { return static_cast<double>(std::labs(m)); };
}

LagWeight h1_weight(const std::function<double(long)>& window_value, long sample_count) {
    return [window_value, sample_count](long m) {
        const long a = std::labs(m);
        if (a >= sample_count) return 1.0;
        const double triangle = 1.0 - static_cast<double>(a) / static_cast<double>(sample_count);
        return std::abs(1.0 - window_value(a) * triangle);
    };
}

LagWeight h1_weight(const WindowFunction& window, long sample_count) {
    return h1_weight([window](long m) { return window.value(m); }, sample_count);
}

AcfMomentResult acf_moment(const ProcessModel& model, const LagWeight& h, double tail_rel_tol, long lag_cap) {
    AcfMomentResult result;

    if (std::holds_alternative<FirProcessModel>(model)) {
        // finite ACF support: the sum is exact
        const auto& fir = std::get<FirProcessModel>(model);
        const long len = static_cast<long>(fir.taps().size());
        result.value = h(0) * max_abs(analytic_acf(model, 0));
        for (long m = 1; m < len; ++m) result.value += 2.0 * h(m) * max_abs(analytic_acf(model, static_cast<int>(m)));
        result.truncation_lag = len - 1;
        result.tail_bound = 0.0;
        return result;
    }

    const auto& var = std::get<Var1ProcessModel>(model);
    Eigen::SelfAdjointEigenSolver<Mat> es(var.transition());
    const double rho = es.eigenvalues().cwiseAbs().maxCoeff();
    const double sigma_norm = var.stationary_cov().operatorNorm();

    double sum = h(0) * max_abs(analytic_acf(model, 0));
    Mat r = var.stationary_cov();
    double prev_term = 0.0;
    int growth_streak = 0;
    for (long m = 1; m <= lag_cap; ++m) {
        r = var.transition() * r;
        const double term = 2.0 * h(m) * max_abs(r);
        sum += term;

        // geometric tail estimate: assumes h grows at most like the recent
        // h-ratio; valid once h[m] rho^m is decreasing
        if (term > prev_term && m > 8) {
            if (++growth_streak > 64)
                throw NumericError("acf_moment: weighted sum diverges (terms keep growing)");
        } else {
            growth_streak = 0;
        }
        prev_term = term;

        if (m >= 8) {
            const double h_ratio = h(m) > 0.0 ? h(m + 1) / h(m) : 1.0;
            const double q = rho * std::max(1.0, h_ratio);
            if (q < 1.0) {
                const double tail = 2.0 * sigma_norm * h(m + 1) * std::pow(rho, static_cast<double>(m + 1)) / (1.0 - q);
                if (tail <= tail_rel_tol * std::max(sum, 1e-300)) {
                    result.value = sum;
                    result.tail_bound = tail;
                    result.truncation_lag = m;
                    return result;
                }
            }
        }
    }
    throw NumericError("acf_moment: truncation cap reached before the tail became negligible");
}

namespace {

CMat inverse_sdm_at(const ProcessModel& model, double theta) {
    const CMat s = true_sdm_at(model, theta);
    Eigen::LLT<CMat> llt(s);
    if (llt.info() != Eigen::Success) throw NumericError("inverse SDM: singular matrix at quadrature node");
    return llt.solve(CMat::Identity(s.rows(), s.cols()));
}

}  // namespace

double global_partial_coherence(const ProcessModel& model, int k, int l, int quadrature_points) {
    const int p = dimension(model);
    if (k == l || k < 0 || l < 0 || k >= p || l >= p)
        throw std::invalid_argument("global_partial_coherence: need distinct node indices in range");
    if (quadrature_points < 1) throw std::invalid_argument("global_partial_coherence: need Q >= 1");

    double sum = 0.0;
    for (int q = 0; q < quadrature_points; ++q) {
        const double theta = (q + 0.5) / quadrature_points;
        const CMat inv = inverse_sdm_at(model, theta);
        const double denom = std::sqrt(inv(k, k).real() * inv(l, l).real());
        if (!(denom > 0.0)) throw NumericError("global_partial_coherence: nonpositive inverse diagonal");
        sum += std::abs(inv(k, l)) / denom;
    }
    return sum / quadrature_points;
}

double lemma1_min_F(const ProcessModel& model, double a_bound) {
    if (!(a_bound > 0.0)) throw std::invalid_argument("lemma1_min_F: need a_bound > 0");
    constexpr int kDenseGrid = 128;  // CIG support detection grid
    const Graph cig = true_cig(model, kDenseGrid);
    const double mu_h0 = acf_moment(model, h0_weight()).value;

    double worst = 0.0;
    for (const auto& [k, l] : cig.edges()) {
        const double gamma = global_partial_coherence(model, k, l);
        if (gamma <= 0.0) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, mu_h0 / (a_bound * gamma));
    }
    return worst;
}

std::optional<double> min_partial_coherence(const ProcessModel& model, int F) {
    constexpr int kDenseGrid = 128;
    const Graph cig = true_cig(model, kDenseGrid);
    if (cig.edge_count() == 0) return std::nullopt;

    std::vector<CMat> inverses;
    inverses.reserve(static_cast<std::size_t>(F));
    for (int f = 0; f < F; ++f) inverses.push_back(inverse_sdm_at(model, static_cast<double>(f) / F));

    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < cig.node_count(); ++r) {
        for (int other : cig.neighbors(r)) {
            double sum = 0.0;
            for (const auto& inv : inverses) {
                const double denom = std::abs(inv(r, r));
                if (!(denom > 0.0)) throw NumericError("min_partial_coherence: zero inverse diagonal");
                sum += std::norm(inv(r, other) / denom);
            }
            best = std::min(best, std::sqrt(sum));
        }
    }
    return best;
}

namespace {

// Euclidean projection of the group-norm profile onto the l1 ball of the
// given radius; each group is rescaled by the shrunken norm.
void project_offsupport_ball(CMat& beta, const std::vector<bool>& on_support, double radius) {
    std::vector<std::pair<Eigen::Index, double>> norms;
    double total = 0.0;
    for (Eigen::Index g = 0; g < beta.rows(); ++g) {
        if (on_support[static_cast<std::size_t>(g)]) continue;
        const double n = beta.row(g).norm();
        norms.emplace_back(g, n);
        total += n;
    }
    if (total <= radius) return;

    std::vector<double> sorted;
    sorted.reserve(norms.size());
    for (const auto& [g, n] : norms) sorted.push_back(n);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0, threshold = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        cumulative += sorted[i];
        const double candidate = (cumulative - radius) / static_cast<double>(i + 1);
        if (i + 1 == sorted.size() || sorted[i + 1] <= candidate) {
            threshold = candidate;
            break;
        }
    }
    for (const auto& [g, n] : norms) {
        const double shrunk = std::max(0.0, n - threshold);
        if (n > 0.0)
            beta.row(g) *= shrunk / n;
        else
            beta.row(g).setZero();
    }
}

double support_l21(const CMat& beta, const std::vector<bool>& on_support) {
    double sum = 0.0;
    for (Eigen::Index g = 0; g < beta.rows(); ++g)
        if (on_support[static_cast<std::size_t>(g)]) sum += beta.row(g).norm();
    return sum;
}

double quadratic_form(const std::vector<CMat>& gram, const CMat& beta) {
    double q = 0.0;
    for (int f = 0; f < static_cast<int>(gram.size()); ++f)
        q += beta.col(f).dot(gram[static_cast<std::size_t>(f)] * beta.col(f)).real();
    return q;
}

}  // namespace

double compatibility_constant_estimate(const std::vector<CMat>& gram, const std::vector<int>& support,
                                       int restarts, std::uint64_t seed) {
    if (gram.empty()) throw std::invalid_argument("compatibility estimate: no frequency blocks");
    if (support.empty()) throw std::invalid_argument("compatibility estimate: empty support set");
    if (restarts < 1) throw std::invalid_argument("compatibility estimate: need at least one restart");

    const Eigen::Index dim = gram.front().rows();
    const int freq_count = static_cast<int>(gram.size());
    const double s = static_cast<double>(support.size());

    std::vector<bool> on_support(static_cast<std::size_t>(dim), false);
    for (int g : support) {
        if (g < 0 || g >= dim) throw std::invalid_argument("compatibility estimate: support index out of range");
        on_support[static_cast<std::size_t>(g)] = true;
    }

    double lipschitz = 0.0;
    for (const auto& m : gram) lipschitz = std::max(lipschitz, power_lambda_max(m));
    const double step = 0.5 / std::max(2.0 * s * lipschitz, 1e-300);

    std::mt19937_64 engine(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best = std::numeric_limits<double>::infinity();
    constexpr int kIterations = 600;

    for (int r = 0; r < restarts; ++r) {
        CMat beta(dim, freq_count);
        for (Eigen::Index i = 0; i < dim; ++i)
            for (int f = 0; f < freq_count; ++f) beta(i, f) = Complex(gauss(engine), gauss(engine));

        for (int it = 0; it <= kIterations; ++it) {
            // renormalize the support part, then pull the complement inside the cone
            const double t = support_l21(beta, on_support);
            if (!(t > 1e-12)) break;
            beta /= t;
            project_offsupport_ball(beta, on_support, 3.0);

            best = std::min(best, std::sqrt(std::max(0.0, s * quadratic_form(gram, beta))));
            if (it == kIterations) break;

            for (int f = 0; f < freq_count; ++f)
                beta.col(f) -= step * (2.0 * s) * (gram[static_cast<std::size_t>(f)] * beta.col(f));
        }
    }
    return best;
}

double compatibility_constant_estimate(const NodeRegressionInputs& inputs, const std::vector<int>& support,
                                       int restarts, std::uint64_t seed) {
    return compatibility_constant_estimate(inputs.gram, support, restarts, seed);
}

TheoremPrescription theorem1_prescription(const ClassParameters& params, int F, double sample_count, int p,
                                          double delta, const WindowFunction& window) {
    if (params.s_max < 1 || !(params.rho_min > 0.0) || !(params.phi_min > 0.0) || !(params.a_bound > 0.0) ||
        !(params.b_bound > 0.0))
        throw std::invalid_argument("theorem1_prescription: class parameters must be positive");
    if (!(delta > 0.0) || !(delta < 1.0)) throw std::invalid_argument("theorem1_prescription: need 0 < delta < 1");
    if (F < 1 || p < 1) throw std::invalid_argument("theorem1_prescription: need F >= 1 and p >= 1");

    const double s_max = static_cast<double>(params.s_max);
    const double phi2 = params.phi_min * params.phi_min;

    TheoremPrescription out;
    out.lambda = phi2 * params.rho_min / (18.0 * s_max * F);
    out.eta = params.rho_min / 2.0;
    out.kappa = (phi2 / 174.0) * (params.rho_min / std::sqrt(static_cast<double>(F))) *
                std::sqrt(params.a_bound / params.b_bound);
    const double w1 = window.l1_norm();
    out.n_threshold = 256.0 * std::log(4.0 * F * std::pow(static_cast<double>(p), 3) / delta) * w1 * w1 *
                      params.b_bound * params.b_bound * std::pow(s_max, 3) / (out.kappa * out.kappa);
    out.mu_h1_bound = out.kappa / (2.0 * std::pow(s_max, 1.5));
    out.sample_size_ok = sample_count > out.n_threshold;
    out.smoothness_ok = params.mu_h1 <= out.mu_h1_bound;
    return out;
}

}  // namespace scig
