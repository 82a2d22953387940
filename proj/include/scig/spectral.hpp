#pragma once

#include <vector>

#include "scig/types.hpp"

namespace scig {

/// Biased sample autocovariance R[m] = (1/N) sum_{n} x[n+m] x[n]^T for
/// m = 0..max_lag. `samples` has one time step per row.
/// Throws std::invalid_argument for an empty sample set or max_lag >= N.
AcfSequence sample_acf(const Mat& samples, int max_lag);
AcfSequence sample_acf(const std::vector<Vec>& samples, int max_lag);

/// Lag-windowed Fourier transform of the sample ACF on the regular grid
/// theta_f = f/F:
///   S_hat(theta_f) = sum_{|m| <= support} w[m] R[m] e^{-j 2 pi theta_f m}
/// with R[-m] = R[m]^T. Each output matrix is symmetrized to (M + M^H)/2.
/// Requires window.support <= acf.max_lag and F >= 1.
HermitianMatrixSequence blackman_tukey(const AcfSequence& acf, const WindowFunction& window, int F);

/// Eigenvalue clamping of a Hermitian matrix: all eigenvalues raised to at
/// least `floor`. This is the Frobenius-nearest matrix with that property.
CMat psd_project(const CMat& m, double floor);
HermitianMatrixSequence psd_project(const HermitianMatrixSequence& seq, double floor);

/// Deletes row/column `node` from every matrix of the sequence and keeps the
/// deleted column (without its diagonal entry) as the regression target.
NodeRegressionInputs extract_node_inputs(const HermitianMatrixSequence& seq, int node);

/// Hermitian PSD square root: returns Q with QQ = M, Q Hermitian PSD.
/// Throws NumericError when M has an eigenvalue below -1e-9 * maxabs(M).
CMat hermitian_sqrt(const CMat& m);

bool is_hermitian(const CMat& m, double rel_tol = 1e-12);
double max_abs(const CMat& m);
double max_abs(const Mat& m);

}  // namespace scig
