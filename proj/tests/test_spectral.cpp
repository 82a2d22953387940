#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "scig/errors.hpp"
#include "scig/rng.hpp"
#include "scig/spectral.hpp"
#include "test_util.hpp"

using namespace scig;
using testutil::max_abs_diff;

TEST_CASE("sample_acf single sample is the outer product") {
    Mat samples(1, 3);
    samples << 1.0, -2.0, 0.5;
    const AcfSequence acf = sample_acf(samples, 0);
    const Vec v = samples.row(0).transpose();
    CHECK(max_abs_diff(acf.at_lag(0), Mat(v * v.transpose())) == doctest::Approx(0.0));
}

TEST_CASE("sample_acf two-sample hand evaluation") {
    Mat samples(2, 2);
    samples << 1.0, 0.0,
               0.0, 1.0;
    const AcfSequence acf = sample_acf(samples, 1);
    CHECK(max_abs_diff(acf.at_lag(0), Mat(0.5 * Mat::Identity(2, 2))) < 1e-15);
    Mat expected_lag1(2, 2);
    expected_lag1 << 0.0, 0.0,
                     0.5, 0.0;
    CHECK(max_abs_diff(acf.at_lag(1), expected_lag1) < 1e-15);
}

TEST_CASE("sample_acf argument validation") {
    Mat samples(4, 2);
    samples.setZero();
    CHECK_THROWS_AS(sample_acf(samples, 4), std::invalid_argument);
    CHECK_THROWS_AS(sample_acf(samples, -1), std::invalid_argument);
    CHECK_THROWS_AS(sample_acf(std::vector<Vec>{}, 0), std::invalid_argument);
}

TEST_CASE("sample_acf of a long white-noise run approaches identity") {
    const int n = 100000, p = 3;
    GaussianSampler rng(91);
    Mat samples(n, p);
    for (int t = 0; t < n; ++t) samples.row(t) = rng.vector(p).transpose();
    const AcfSequence acf = sample_acf(samples, 1);
    CHECK(max_abs_diff(acf.at_lag(0), Mat(Mat::Identity(p, p))) < 0.05);
}

TEST_CASE("blackman_tukey with support-0 window returns the lag-0 matrix at every frequency") {
    std::mt19937_64 rng(7);
    Mat samples(32, 3);
    std::normal_distribution<double> gauss;
    for (int i = 0; i < samples.rows(); ++i)
        for (int j = 0; j < samples.cols(); ++j) samples(i, j) = gauss(rng);
    const AcfSequence acf = sample_acf(samples, 5);
    const auto sdm = blackman_tukey(acf, WindowFunction::rectangular_window(0), 3);
    for (int f = 0; f < 3; ++f)
        CHECK(max_abs_diff(sdm.at(f), CMat(acf.at_lag(0).cast<Complex>())) < 1e-14);
}

TEST_CASE("gaussian window values") {
    const auto w = WindowFunction::gaussian_window(44.0, 10);
    CHECK(w.value(0) == doctest::Approx(1.0));
    CHECK(w.value(1) == doctest::Approx(std::exp(-1.0 / 44.0)));
    CHECK(w.value(-1) == doctest::Approx(w.value(1)));
    CHECK(w.value(11) == 0.0);
}

TEST_CASE("blackman_tukey scalar cosine sum") {
    AcfSequence acf;
    acf.lags = {Mat::Constant(1, 1, 1.0), Mat::Constant(1, 1, 0.5)};
    const auto sdm = blackman_tukey(acf, WindowFunction::rectangular_window(1), 2);
    CHECK(sdm.at(0)(0, 0).real() == doctest::Approx(2.0));
    CHECK(sdm.at(1)(0, 0).real() == doctest::Approx(0.0));
    CHECK(std::abs(sdm.at(0)(0, 0).imag()) < 1e-15);
}

TEST_CASE("blackman_tukey output is exactly Hermitian and obeys the real-input grid symmetry") {
    GaussianSampler sampler(5);
    const int n = 64, p = 4, F = 6;
    Mat samples(n, p);
    for (int t = 0; t < n; ++t) samples.row(t) = sampler.vector(p).transpose();
    const AcfSequence acf = sample_acf(samples, 10);
    const auto sdm = blackman_tukey(acf, WindowFunction::bartlett_window(10), F);

    for (int f = 0; f < F; ++f) CHECK(max_abs_diff(sdm.at(f), CMat(sdm.at(f).adjoint())) == 0.0);

    // S(1 - theta) = conj(S(theta)) for real samples
    for (int f = 1; f < F; ++f)
        CHECK(max_abs_diff(sdm.at(F - f), CMat(sdm.at(f).conjugate())) < 1e-12);
}

TEST_CASE("grid average of the estimate collapses to the lag-0 term") {
    GaussianSampler sampler(11);
    const int n = 50, p = 3, support = 4, F = 16;  // F > 2 * support
    Mat samples(n, p);
    for (int t = 0; t < n; ++t) samples.row(t) = sampler.vector(p).transpose();
    const AcfSequence acf = sample_acf(samples, support);
    const auto w = WindowFunction::gaussian_window(10.0, support);
    const auto sdm = blackman_tukey(acf, w, F);

    CMat mean = CMat::Zero(p, p);
    for (int f = 0; f < F; ++f) mean += sdm.at(f);
    mean /= F;
    CHECK(max_abs_diff(mean, CMat(w.value(0) * acf.at_lag(0).cast<Complex>())) < 1e-13);
}

TEST_CASE("psd_project leaves PSD input unchanged and clamps negative eigenvalues") {
    CMat pos(2, 2);
    pos << Complex(2.0, 0.0), Complex(0.3, 0.1),
           Complex(0.3, -0.1), Complex(1.0, 0.0);
    CHECK(max_abs_diff(psd_project(pos, 0.0), pos) < 1e-10);

    CMat indefinite = CMat::Zero(2, 2);
    indefinite(0, 0) = 1.0;
    indefinite(1, 1) = -0.2;
    CMat expected = CMat::Zero(2, 2);
    expected(0, 0) = 1.0;
    CHECK(max_abs_diff(psd_project(indefinite, 0.0), expected) < 1e-14);
}

TEST_CASE("psd_project is the Frobenius-nearest PSD matrix (probe oracle) and idempotent") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const CMat m = testutil::random_hermitian(3, rng);
        const CMat projected = psd_project(m, 0.0);

        Eigen::SelfAdjointEigenSolver<CMat> es(projected);
        CHECK(es.eigenvalues().minCoeff() >= -1e-12);
        CHECK(max_abs_diff(projected, CMat(projected.adjoint())) < 1e-13);
        CHECK(max_abs_diff(psd_project(projected, 0.0), projected) < 1e-10);

        // no random PSD candidate gets closer in Frobenius norm
        const double dist = (m - projected).norm();
        for (int probe = 0; probe < 300; ++probe) {
            CMat candidate = projected + 0.3 * testutil::random_hermitian(3, rng);
            candidate = psd_project(candidate, 0.0);
            CHECK((m - candidate).norm() >= dist - 1e-9);
        }
    }
}

TEST_CASE("psd_project rejects non-finite input") {
    CMat bad = CMat::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(psd_project(bad, 0.0), NumericError);
}

TEST_CASE("extract_node_inputs on a 2x2 partition") {
    HermitianMatrixSequence seq;
    CMat s(2, 2);
    s << Complex(1.5, 0.0), Complex(0.4, 0.2),
         Complex(0.4, -0.2), Complex(2.5, 0.0);
    seq.matrices = {s};
    const auto inputs = extract_node_inputs(seq, 0);
    CHECK(inputs.gram[0](0, 0) == s(1, 1));
    CHECK(inputs.cross[0](0) == s(1, 0));  // conjugate of the upper off-diagonal
}

TEST_CASE("extract_node_inputs of the identity gives identity blocks and zero targets") {
    HermitianMatrixSequence seq;
    seq.matrices = {CMat::Identity(4, 4), CMat::Identity(4, 4)};
    for (int r = 0; r < 4; ++r) {
        const auto inputs = extract_node_inputs(seq, r);
        for (int f = 0; f < 2; ++f) {
            CHECK(max_abs_diff(inputs.gram[static_cast<std::size_t>(f)], CMat(CMat::Identity(3, 3))) == 0.0);
            CHECK(inputs.cross[static_cast<std::size_t>(f)].norm() == 0.0);
        }
    }
}

TEST_CASE("extract_node_inputs matches a brute-force index filter") {
    std::mt19937_64 rng(33);
    HermitianMatrixSequence seq;
    seq.matrices = {testutil::random_hermitian(4, rng)};
    const int r = 2;
    const auto inputs = extract_node_inputs(seq, r);

    // independent bookkeeping: walk all index pairs and skip row/column r
    const CMat& s = seq.matrices[0];
    int oi = 0;
    for (int i = 0; i < 4; ++i) {
        if (i == r) continue;
        CHECK(inputs.cross[0](oi) == s(i, r));
        int oj = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == r) continue;
            CHECK(inputs.gram[0](oi, oj) == s(i, j));
            ++oj;
        }
        ++oi;
    }
    CHECK_THROWS_AS(extract_node_inputs(seq, 4), std::invalid_argument);
    CHECK_THROWS_AS(extract_node_inputs(seq, -1), std::invalid_argument);
}

TEST_CASE("hermitian_sqrt basics") {
    CHECK(max_abs_diff(hermitian_sqrt(CMat::Identity(3, 3)), CMat(CMat::Identity(3, 3))) < 1e-12);

    CMat d = CMat::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    CMat expected = CMat::Zero(2, 2);
    expected(0, 0) = 2.0;
    expected(1, 1) = 3.0;
    CHECK(max_abs_diff(hermitian_sqrt(d), expected) < 1e-12);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        const CMat m = testutil::random_psd(5, rng, 0.1, 4.0);
        const CMat root = hermitian_sqrt(m);
        CHECK(max_abs_diff(CMat(root * root), m) < 1e-10 * scig::max_abs(m));
        CHECK(is_hermitian(root, 1e-11));
    }

    CMat negative = CMat::Zero(2, 2);
    negative(0, 0) = 1.0;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(hermitian_sqrt(negative), NumericError);
}
