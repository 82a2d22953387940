#include "scig/mlasso.hpp"

#include <cmath>
#include <stdexcept>

#include "scig/errors.hpp"

namespace scig {

namespace {

void check_inputs(const NodeRegressionInputs& inputs) {
    if (inputs.gram.empty()) throw std::invalid_argument("mlasso: no frequency blocks");
    if (inputs.gram.size() != inputs.cross.size())
        throw std::invalid_argument("mlasso: gram/cross frequency counts differ");
    const auto d = inputs.gram.front().rows();
    for (std::size_t f = 0; f < inputs.gram.size(); ++f) {
        if (inputs.gram[f].rows() != d || inputs.gram[f].cols() != d || inputs.cross[f].size() != d)
            throw std::invalid_argument("mlasso: inconsistent block dimensions");
    }
}

// Per-frequency products G^(f) beta^(f), stored column-per-frequency.
CMat gram_times(const NodeRegressionInputs& inputs, const CMat& beta) {
    CMat out(beta.rows(), beta.cols());
    for (int f = 0; f < static_cast<int>(inputs.gram.size()); ++f)
        out.col(f) = inputs.gram[static_cast<std::size_t>(f)] * beta.col(f);
    return out;
}

// Stacked smooth gradient (2/F)(G beta - c), one column per frequency.
CMat smooth_gradient(const NodeRegressionInputs& inputs, const CMat& gram_beta) {
    const int freq_count = static_cast<int>(inputs.cross.size());
    CMat grad(gram_beta.rows(), gram_beta.cols());
    const double scale = 2.0 / freq_count;
    for (int f = 0; f < freq_count; ++f)
        grad.col(f) = scale * (gram_beta.col(f) - inputs.cross[static_cast<std::size_t>(f)]);
    return grad;
}

double kkt_residual_from(const CMat& grad, const CMat& beta, double lambda) {
    double worst = 0.0;
    for (Eigen::Index g = 0; g < beta.rows(); ++g) {
        const double beta_norm = beta.row(g).norm();
        double res;
        if (beta_norm > 0.0) {
            res = (grad.row(g) + (lambda / beta_norm) * beta.row(g)).norm();
        } else {
            res = std::max(0.0, grad.row(g).norm() - lambda);
        }
        worst = std::max(worst, res);
    }
    return worst / std::max(1.0, lambda);
}

double objective_from(const NodeRegressionInputs& inputs, const CMat& beta, const CMat& gram_beta,
                      double lambda) {
    const int freq_count = static_cast<int>(inputs.cross.size());
    double smooth = 0.0;
    for (int f = 0; f < freq_count; ++f) {
        const auto& c = inputs.cross[static_cast<std::size_t>(f)];
        smooth += beta.col(f).dot(gram_beta.col(f)).real();  // beta^H G beta
        smooth -= 2.0 * c.dot(beta.col(f)).real();           // 2 Re{c^H beta}
    }
    double penalty = 0.0;
    for (Eigen::Index g = 0; g < beta.rows(); ++g) penalty += beta.row(g).norm();
    return smooth / freq_count + lambda * penalty;
}

}  // namespace

double power_lambda_max(const CMat& m, int max_iter, double tol) {
    const auto n = m.rows();
    if (n == 0) return 0.0;
    double best = 0.0;
    // two deterministic starts in case one is orthogonal to the top eigenvector
    for (int start = 0; start < 2; ++start) {
        CVec v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v(i) = start == 0 ? Complex(1.0, 0.0) : Complex(1.0 + static_cast<double>(i), 0.5);
        v.normalize();
        double rayleigh = 0.0;
        for (int it = 0; it < max_iter; ++it) {
            CVec w = m * v;
            const double norm = w.norm();
            if (norm <= 0.0) break;
            const double next = v.dot(w).real();
            v = w / norm;
            if (std::abs(next - rayleigh) <= tol * std::max(1.0, std::abs(next))) {
                rayleigh = next;
                break;
            }
            rayleigh = next;
        }
        best = std::max(best, rayleigh);
    }
    return best;
}

double objective(const NodeRegressionInputs& inputs, const GroupedCoefficients& beta, double lambda) {
    check_inputs(inputs);
    if (lambda < 0.0) throw std::invalid_argument("mlasso: lambda must be nonnegative");
    if (beta.group_count() != inputs.coefficient_count() || beta.frequency_count() != inputs.frequency_count())
        throw std::invalid_argument("mlasso: coefficient dimensions do not match the inputs");
    return objective_from(inputs, beta.matrix(), gram_times(inputs, beta.matrix()), lambda);
}

CVec group_soft_threshold(const CVec& z, double tau) {
    if (tau < 0.0) throw std::invalid_argument("group_soft_threshold: tau must be nonnegative");
    const double norm = z.norm();
    if (norm <= tau) return CVec::Zero(z.size());
    return (1.0 - tau / norm) * z;
}

double kkt_residual(const NodeRegressionInputs& inputs, const GroupedCoefficients& beta, double lambda) {
    check_inputs(inputs);
    return kkt_residual_from(smooth_gradient(inputs, gram_times(inputs, beta.matrix())), beta.matrix(), lambda);
}

std::pair<GroupedCoefficients, SolverReport> solve(const NodeRegressionInputs& inputs, double lambda,
                                                   double tol, int max_iter) {
    check_inputs(inputs);
    if (lambda < 0.0) throw std::invalid_argument("mlasso: lambda must be nonnegative");
    if (max_iter < 1) throw std::invalid_argument("mlasso: max_iter must be positive");

    const int freq_count = inputs.frequency_count();
    const int coef_count = inputs.coefficient_count();

    double lipschitz = 0.0;
    for (const auto& g : inputs.gram) lipschitz = std::max(lipschitz, power_lambda_max(g));
    lipschitz *= 2.0 / freq_count;
    const double step = 1.0 / std::max(lipschitz, 1e-300);

    CMat beta = CMat::Zero(coef_count, freq_count);
    CMat beta_prev = beta;
    CMat gram_beta = CMat::Zero(coef_count, freq_count);
    CMat gram_beta_prev = gram_beta;
    CMat momentum_point = beta;        // y_k
    CMat gram_momentum = gram_beta;    // G y_k, maintained by linearity
    double t = 1.0;

    SolverReport report;
    report.kkt_residual = kkt_residual_from(smooth_gradient(inputs, gram_beta), beta, lambda);
    if (report.kkt_residual <= tol) {
        report.converged = true;
        report.final_objective = objective_from(inputs, beta, gram_beta, lambda);
        return {GroupedCoefficients(beta), report};
    }

    for (int iter = 1; iter <= max_iter; ++iter) {
        const CMat grad = smooth_gradient(inputs, gram_momentum);
        CMat candidate = momentum_point - step * grad;
        for (Eigen::Index g = 0; g < candidate.rows(); ++g) {
            const double norm = candidate.row(g).norm();
            const double tau = step * lambda;
            if (norm <= tau)
                candidate.row(g).setZero();
            else
                candidate.row(g) *= 1.0 - tau / norm;
        }

        beta_prev = beta;
        gram_beta_prev = gram_beta;
        beta = candidate;
        gram_beta = gram_times(inputs, beta);

        report.iterations = iter;
        report.kkt_residual = kkt_residual_from(smooth_gradient(inputs, gram_beta), beta, lambda);
        if (report.kkt_residual <= tol) {
            report.converged = true;
            break;
        }

        const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
        const double momentum = (t - 1.0) / t_next;
        momentum_point = beta + momentum * (beta - beta_prev);
        gram_momentum = gram_beta + momentum * (gram_beta - gram_beta_prev);
        t = t_next;
    }

    report.final_objective = objective_from(inputs, beta, gram_beta, lambda);
    return {GroupedCoefficients(beta), report};
}

}  // namespace scig
