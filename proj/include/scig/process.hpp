#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "scig/types.hpp"

namespace scig {

/// Moving-average process x[n] = sum_m g[m] e[n-m] with e[n] i.i.d.
/// N(0, C0). The transfer magnitude |G(theta)|^2 must be bounded away from
/// zero (checked on a fine grid at construction) and C0 must be symmetric
/// positive definite.
class FirProcessModel {
public:
    FirProcessModel(std::vector<double> taps, Mat innovation_cov);

    int dimension() const { return static_cast<int>(innovation_cov_.rows()); }
    const std::vector<double>& taps() const { return taps_; }
    const Mat& innovation_cov() const { return innovation_cov_; }

    /// |G(theta)|^2 at a single frequency
    double transfer_power(double theta) const;

private:
    std::vector<double> taps_;
    Mat innovation_cov_;
};

/// First-order vector autoregression x[n] = A x[n-1] + w[n] with
/// w[n] ~ N(0, sigma^2 I). A must be symmetric with zero diagonal, all
/// nonzero entries equal to a common positive coupling, and spectral
/// radius < 1.
class Var1ProcessModel {
public:
    Var1ProcessModel(Mat transition, double noise_var);
    Var1ProcessModel(const Graph& dependency, double coupling, double noise_var);

    int dimension() const { return static_cast<int>(transition_.rows()); }
    const Mat& transition() const { return transition_; }
    double noise_var() const { return noise_var_; }

    /// common nonzero entry of the transition matrix (0 when A = 0)
    double coupling() const { return coupling_; }
    /// max degree of the dependency graph encoded by the transition support
    int dependency_max_degree() const;

    /// Solution of Sigma = A Sigma A^T + sigma^2 I.
    Mat stationary_cov() const;

private:
    Mat transition_;
    double noise_var_ = 1.0;
    double coupling_ = 0.0;
};

using ProcessModel = std::variant<FirProcessModel, Var1ProcessModel>;

int dimension(const ProcessModel& model);

/// Draws N samples (rows = time) deterministically from `seed`. The FIR
/// start is exactly stationary (pre-samples drawn for the filter memory);
/// the VAR start is drawn from the stationary covariance.
Mat simulate(const ProcessModel& model, int sample_count, std::uint64_t seed);

/// Analytic spectral density matrix on the theta_f = f/F grid.
HermitianMatrixSequence true_sdm(const ProcessModel& model, int F);
/// Analytic SDM at one frequency.
CMat true_sdm_at(const ProcessModel& model, double theta);

/// Ground-truth conditional independence graph: edge (k,l) present iff
/// max_f |[S^{-1}(theta_f)]_{k,l}| exceeds tol times the largest inverse-SDM
/// entry over the grid.
Graph true_cig(const ProcessModel& model, int F, double tol = 1e-9);

/// Exact autocovariance R[m] of the model, m >= 0.
Mat analytic_acf(const ProcessModel& model, int lag);

struct Var1ClassParameters {
    int s_max = 0;
    double rho_min = 0.0;
    double phi_min = 0.0;
    double a_bound = 0.0;   ///< lower eigenvalue bound of the SDM
    double b_bound = 0.0;   ///< upper eigenvalue bound of the SDM
};

/// Closed-form class parameters of the VAR(1) family:
/// {d_max^2, a, sigma^2/4, sigma^2/4, 4 sigma^2}. Requires
/// 0 < a <= 1/(2 d_max); throws ModelError otherwise.
Var1ClassParameters class_parameters_var1(const Var1ProcessModel& model);

/// Random sparse-CIG FIR model: the innovation precision is built as
/// I + coupling * Adj(G) for a random simple graph G with max degree
/// <= max_degree, then inverted. The resulting CIG equals G exactly.
FirProcessModel fir_random_cig_model(int p, int max_degree, double coupling,
                                     std::vector<double> taps, std::uint64_t graph_seed);

/// The dependency graph used by fir_random_cig_model for a given seed.
Graph random_bounded_degree_graph(int p, int max_degree, std::uint64_t seed);

}  // namespace scig
