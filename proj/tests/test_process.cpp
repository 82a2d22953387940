#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>

#include "scig/errors.hpp"
#include "scig/io.hpp"
#include "scig/process.hpp"
#include "scig/spectral.hpp"
#include "test_util.hpp"

using namespace scig;
using testutil::max_abs_diff;

namespace {

Var1ProcessModel chain_var1(int p, double coupling, double noise_var) {
    Graph chain(p);
    for (int i = 0; i + 1 < p; ++i) chain.add_edge(i, i + 1);
    return Var1ProcessModel(chain, coupling, noise_var);
}

}  // namespace

TEST_CASE("simulate is deterministic in the seed") {
    const ProcessModel model = FirProcessModel({1.0, 0.4}, Mat::Identity(3, 3));
    const Mat a = simulate(model, 100, 7);
    const Mat b = simulate(model, 100, 7);
    const Mat c = simulate(model, 100, 8);
    CHECK(max_abs_diff(a, b) == 0.0);
    CHECK(max_abs_diff(a, c) > 0.0);
}

TEST_CASE("trivial FIR filter reproduces white noise statistics") {
    const ProcessModel model = FirProcessModel({1.0}, Mat::Identity(4, 4));
    const Mat samples = simulate(model, 100000, 13);
    const Mat cov = samples.transpose() * samples / static_cast<double>(samples.rows());
    CHECK(max_abs_diff(cov, Mat(Mat::Identity(4, 4))) < 0.05);
}

TEST_CASE("VAR(1) with zero transition is white noise") {
    const double s2 = 2.25;
    const Var1ProcessModel model(Mat::Zero(3, 3), s2);
    const Mat samples = simulate(ProcessModel(model), 100000, 17);
    const Mat cov = samples.transpose() * samples / static_cast<double>(samples.rows());
    CHECK(max_abs_diff(cov, Mat(s2 * Mat::Identity(3, 3))) < 0.05 * s2);
}

TEST_CASE("non-stationary VAR is rejected") {
    Mat a = Mat::Zero(2, 2);
    a(0, 1) = a(1, 0) = 1.05;
    CHECK_THROWS_AS(Var1ProcessModel(a, 1.0), ModelError);
}

TEST_CASE("model validation catches asymmetric or unequal transitions") {
    Mat asym = Mat::Zero(2, 2);
    asym(0, 1) = 0.3;
    CHECK_THROWS_AS(Var1ProcessModel(asym, 1.0), ModelError);

    Mat unequal = Mat::Zero(3, 3);
    unequal(0, 1) = unequal(1, 0) = 0.2;
    unequal(1, 2) = unequal(2, 1) = 0.3;
    CHECK_THROWS_AS(Var1ProcessModel(unequal, 1.0), ModelError);

    CHECK_THROWS_AS(FirProcessModel({1.0, -1.0}, Mat::Identity(2, 2)), ModelError);  // zero at theta = 0
}

TEST_CASE("true_sdm of the trivial FIR model is the identity") {
    const ProcessModel model = FirProcessModel({1.0}, Mat::Identity(3, 3));
    const auto sdm = true_sdm(model, 4);
    for (int f = 0; f < 4; ++f) CHECK(max_abs_diff(sdm.at(f), CMat(CMat::Identity(3, 3))) < 1e-14);
}

TEST_CASE("scalar AR(1) spectrum matches the closed form") {
    Mat a = Mat::Zero(1, 1);  // scalar VAR(1) with zero coupling is white; use p=2 chain restricted instead
    const double coupling = 0.3;
    Mat a2 = Mat::Zero(2, 2);
    a2(0, 1) = a2(1, 0) = coupling;
    const Var1ProcessModel model(a2, 1.0);
    const auto sdm = true_sdm(ProcessModel(model), 8);
    // eigen-decoupled scalar AR(1) components at +/- coupling
    for (int f = 0; f < 8; ++f) {
        const double theta = static_cast<double>(f) / 8.0;
        const Complex z = std::polar(1.0, -2.0 * std::numbers::pi * theta);
        // transform to the eigenbasis (1,1)/sqrt(2), (1,-1)/sqrt(2)
        CMat v(2, 2);
        v << 1.0, 1.0, 1.0, -1.0;
        v /= std::sqrt(2.0);
        const CMat diag = v.adjoint() * sdm.at(f) * v;
        CHECK(std::abs(diag(0, 0) - 1.0 / std::norm(1.0 - coupling * z)) < 1e-12);
        CHECK(std::abs(diag(1, 1) - 1.0 / std::norm(1.0 + coupling * z)) < 1e-12);
    }
}

TEST_CASE("VAR true_sdm inverse reconstructs the identity") {
    const Var1ProcessModel model = chain_var1(4, 0.2, 1.3);
    const auto sdm = true_sdm(ProcessModel(model), 5);
    for (int f = 0; f < 5; ++f) {
        const CMat& s = sdm.at(f);
        const CMat inv = s.inverse();
        CHECK(max_abs_diff(CMat(s * inv), CMat(CMat::Identity(4, 4))) < 1e-12);
    }
}

TEST_CASE("FIR true_cig equals the support of the innovation precision") {
    Graph graph(5);
    graph.add_edge(0, 1);
    graph.add_edge(2, 4);
    Mat precision = Mat::Identity(5, 5);
    for (const auto& [k, l] : graph.edges()) precision(k, l) = precision(l, k) = 0.3;
    const Mat cov = precision.inverse();
    const ProcessModel model = FirProcessModel({1.0, 0.5}, (cov + cov.transpose()) / 2.0);
    CHECK(true_cig(model, 4) == graph);
}

TEST_CASE("diagonal innovation covariance gives an empty graph") {
    Vec d(4);
    d << 1.0, 2.0, 0.5, 1.5;
    const ProcessModel model = FirProcessModel({1.0, 0.5}, Mat(d.asDiagonal()));
    CHECK(true_cig(model, 4).edge_count() == 0);
}

TEST_CASE("FIR true_cig is invariant to the filter choice") {
    const Graph graph = random_bounded_degree_graph(7, 2, 5);
    Mat precision = Mat::Identity(7, 7);
    for (const auto& [k, l] : graph.edges()) precision(k, l) = precision(l, k) = 0.25;
    const Mat cov = precision.inverse();
    const Mat c0 = (cov + cov.transpose()) / 2.0;
    const Graph a = true_cig(FirProcessModel({1.0, 0.5}, c0), 4);
    const Graph b = true_cig(FirProcessModel({0.8, -0.3, 0.2}, c0), 4);
    CHECK(a == b);
    CHECK(a == graph);
}

TEST_CASE("VAR(1) chain CIG matches brute-force inversion on the grid") {
    const int p = 5, F = 8;
    const Var1ProcessModel model = chain_var1(p, 0.2, 1.0);
    const Graph cig = true_cig(ProcessModel(model), F);

    // brute force: invert dense SDMs at every grid point, union the supports
    Graph expected(p);
    std::vector<CMat> inverses;
    double scale = 0.0;
    for (int f = 0; f < F; ++f) {
        const CMat s = true_sdm_at(ProcessModel(model), static_cast<double>(f) / F);
        inverses.push_back(s.inverse());
        scale = std::max(scale, max_abs(inverses.back()));
    }
    for (int k = 0; k < p; ++k)
        for (int l = k + 1; l < p; ++l) {
            double strength = 0.0;
            for (const auto& inv : inverses) strength = std::max(strength, std::abs(inv(k, l)));
            if (strength > 1e-9 * scale) expected.add_edge(k, l);
        }
    CHECK(cig == expected);

    // chain with coupling: one- and two-hop pairs are connected
    CHECK(cig.has_edge(0, 1));
    CHECK(cig.has_edge(0, 2));
    CHECK_FALSE(cig.has_edge(0, 3));
}

TEST_CASE("true_cig output is symmetric without self-loops") {
    const Var1ProcessModel model = chain_var1(6, 0.15, 1.0);
    const Graph cig = true_cig(ProcessModel(model), 8);
    for (const auto& [k, l] : cig.edges()) {
        CHECK(k < l);
        CHECK(cig.has_edge(l, k));
    }
}

TEST_CASE("long-run sample ACF converges to the analytic ACF") {
    const ProcessModel model = FirProcessModel({1.0, 0.5}, Mat::Identity(3, 3));
    const Mat samples = simulate(model, 100000, 23);
    const AcfSequence acf = sample_acf(samples, 1);
    const Mat r0 = analytic_acf(model, 0);
    const Mat r1 = analytic_acf(model, 1);
    CHECK(max_abs_diff(acf.at_lag(0), r0) / max_abs(r0) < 0.05);
    CHECK(max_abs_diff(acf.at_lag(1), r1) / max_abs(r0) < 0.05);
}

TEST_CASE("VAR analytic ACF matches simulation statistics") {
    const Var1ProcessModel model = chain_var1(3, 0.25, 1.0);
    const Mat samples = simulate(ProcessModel(model), 100000, 29);
    const AcfSequence acf = sample_acf(samples, 1);
    const Mat r0 = analytic_acf(ProcessModel(model), 0);
    const Mat r1 = analytic_acf(ProcessModel(model), 1);
    CHECK(max_abs_diff(acf.at_lag(0), r0) / max_abs(r0) < 0.05);
    CHECK(max_abs_diff(acf.at_lag(1), r1) / max_abs(r0) < 0.05);
}

TEST_CASE("VAR true_sdm eigenvalues respect the analytic class bounds") {
    const double s2 = 1.7;
    const Var1ProcessModel model = chain_var1(6, 0.25, s2);  // d_max = 2, a = 1/(2 d_max)
    const auto params = class_parameters_var1(model);
    const auto sdm = true_sdm(ProcessModel(model), 16);
    for (int f = 0; f < 16; ++f) {
        Eigen::SelfAdjointEigenSolver<CMat> es(sdm.at(f));
        CHECK(es.eigenvalues().minCoeff() >= params.a_bound - 1e-12);
        CHECK(es.eigenvalues().maxCoeff() <= params.b_bound + 1e-12);
    }
}

TEST_CASE("class_parameters_var1 closed forms") {
    {
        const Var1ProcessModel model = chain_var1(5, 0.25, 1.0);  // d_max = 2
        const auto params = class_parameters_var1(model);
        CHECK(params.s_max == 4);
        CHECK(params.rho_min == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(params.phi_min == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(params.a_bound == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(params.b_bound == doctest::Approx(4.0).epsilon(1e-15));
    }
    {
        const Var1ProcessModel model = chain_var1(5, 0.25, 4.0);
        const auto params = class_parameters_var1(model);
        CHECK(params.phi_min == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(params.b_bound == doctest::Approx(16.0).epsilon(1e-15));
    }
    {
        const Var1ProcessModel model = chain_var1(2, 0.5, 1.0);  // single edge, d_max = 1
        const auto params = class_parameters_var1(model);
        CHECK(params.s_max == 1);
    }
    {
        const Var1ProcessModel model = chain_var1(5, 0.3, 1.0);  // 0.3 > 1/(2*2)
        CHECK_THROWS_AS(class_parameters_var1(model), ModelError);
    }
}

TEST_CASE("model JSON round trip") {
    const ProcessModel fir = fir_random_cig_model(6, 2, 0.25, {1.0, 0.5}, 11);
    const ProcessModel fir2 = model_from_json(to_json(fir));
    CHECK(max_abs_diff(std::get<FirProcessModel>(fir).innovation_cov(),
                       std::get<FirProcessModel>(fir2).innovation_cov()) < 1e-15);

    const ProcessModel var = ProcessModel(chain_var1(4, 0.2, 1.5));
    const ProcessModel var2 = model_from_json(to_json(var));
    CHECK(max_abs_diff(std::get<Var1ProcessModel>(var).transition(),
                       std::get<Var1ProcessModel>(var2).transition()) == 0.0);

    // generator recipes materialize deterministically
    nlohmann::json recipe = {{"type", "fir_random_cig"}, {"p", 6},        {"max_degree", 2},
                             {"coupling", 0.25},         {"taps", {1.0, 0.5}}, {"graph_seed", 11}};
    const ProcessModel fir3 = model_from_json(recipe);
    CHECK(max_abs_diff(std::get<FirProcessModel>(fir).innovation_cov(),
                       std::get<FirProcessModel>(fir3).innovation_cov()) == 0.0);
}

TEST_CASE("samples CSV round trip") {
    const ProcessModel model = FirProcessModel({1.0, 0.5}, Mat::Identity(2, 2));
    const Mat samples = simulate(model, 16, 3);
    const Mat parsed = samples_from_csv(samples_csv(samples));
    CHECK(max_abs_diff(samples, parsed) == 0.0);
    CHECK_THROWS_AS(samples_from_csv("1.0,2.0\nnope,4.0\n"), std::invalid_argument);
}

TEST_CASE("random bounded-degree graph respects the degree cap and is reproducible") {
    const Graph g1 = random_bounded_degree_graph(64, 3, 7);
    const Graph g2 = random_bounded_degree_graph(64, 3, 7);
    CHECK(g1 == g2);
    CHECK(g1.max_degree() <= 3);
    CHECK(g1.edge_count() > 0);
    const Graph g3 = random_bounded_degree_graph(64, 3, 8);
    CHECK_FALSE(g1 == g3);
}
