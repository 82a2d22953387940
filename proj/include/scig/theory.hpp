#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "scig/process.hpp"
#include "scig/types.hpp"

namespace scig {

/// Parameters of the process class driving the recovery guarantee.
struct ClassParameters {
    int s_max = 0;
    double rho_min = 0.0;
    double mu_h1 = 0.0;
    double phi_min = 0.0;
    double a_bound = 0.0;
    double b_bound = 0.0;
};

struct TheoremPrescription {
    double lambda = 0.0;
    double eta = 0.0;
    double kappa = 0.0;
    double n_threshold = 0.0;
    double mu_h1_bound = 0.0;
    bool sample_size_ok = false;  ///< N > n_threshold
    bool smoothness_ok = false;   ///< mu_h1 <= mu_h1_bound
};

using LagWeight = std::function<double(long)>;

/// h0[m] = |m|
LagWeight h0_weight();
/// h1[m] = |1 - w[m] (1 - |m|/N)| for |m| <= N-1, and 1 beyond. The factor
/// (1 - |m|/N) is the bias triangle of the length-N sample ACF.
LagWeight h1_weight(const WindowFunction& window, long sample_count);
LagWeight h1_weight(const std::function<double(long)>& window_value, long sample_count);

struct AcfMomentResult {
    double value = 0.0;       ///< truncated sum of h[m] * maxabs(R[m]) over m in Z
    double tail_bound = 0.0;  ///< geometric tail estimate beyond the truncation lag
    long truncation_lag = 0;
};

/// Weighted ACF moment sum_m h[m] * ||R[m]||_maxabs evaluated from the
/// model's exact autocovariance. FIR models have finite ACF support (exact,
/// zero tail); VAR(1) sums are truncated when the geometric tail estimate
/// falls below tail_rel_tol of the running value. A weighted sum whose
/// terms keep growing raises NumericError.
AcfMomentResult acf_moment(const ProcessModel& model, const LagWeight& h,
                           double tail_rel_tol = 1e-10, long lag_cap = 1 << 20);

/// Frequency-averaged partial coherence of the pair (k, l):
///   integral over [0,1) of |S^{-1}_{kl}| / sqrt(S^{-1}_{kk} S^{-1}_{ll}),
/// midpoint rule on `quadrature_points` uniform points.
double global_partial_coherence(const ProcessModel& model, int k, int l, int quadrature_points = 512);

/// Smallest admissible grid size from the coherence criterion:
/// max over true edges (k,l) of mu_h0 / (a_bound * Gamma^(k,l)); any F
/// strictly greater suffices. Returns +inf when some edge has zero
/// coherence (criterion unsatisfiable).
double lemma1_min_F(const ProcessModel& model, double a_bound);

/// min over edges (r,r') of sqrt( sum_f |S^{-1}_{r r'} / S^{-1}_{r r}|^2 )
/// on the F-point grid. Empty edge set -> nullopt.
std::optional<double> min_partial_coherence(const ProcessModel& model, int F);

/// Upper estimate of the multitask compatibility constant
///   phi(S) = min over the cone {||beta_{S^c}||_{2,1} <= 3 ||beta_S||_{2,1}}
///   of sqrt(|S| sum_f beta^(f)^H G^(f) beta^(f)) / ||beta_S||_{2,1}
/// by projected gradient descent from `restarts` random starts. Every
/// iterate is feasible, so the reported best ratio upper-bounds phi(S).
double compatibility_constant_estimate(const std::vector<CMat>& gram, const std::vector<int>& support,
                                       int restarts, std::uint64_t seed);
double compatibility_constant_estimate(const NodeRegressionInputs& inputs, const std::vector<int>& support,
                                       int restarts, std::uint64_t seed);

/// Parameter prescriptions of the recovery guarantee:
///   lambda      = phi_min^2 rho_min / (18 s_max F)
///   eta         = rho_min / 2
///   kappa       = (phi_min^2 / 174) (rho_min / sqrt(F)) sqrt(A/B)
///   n_threshold = 2^8 log(4 F p^3 / delta) ||w||_1^2 B^2 s_max^3 / kappa^2
///   mu_h1_bound = kappa / (2 s_max^{3/2})
TheoremPrescription theorem1_prescription(const ClassParameters& params, int F, double sample_count,
                                          int p, double delta, const WindowFunction& window);

}  // namespace scig
