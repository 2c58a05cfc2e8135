#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "oracles.hpp"
#include "scdt/estimate.hpp"
#include "scdt/harness.hpp"
#include "scdt/transform.hpp"

using namespace scdt;

namespace {

const double kPi = 3.14159265358979323846;

Signal gabor_pulse(const Grid& g) { return gabor(g, 0.5, 40.0 * kPi, 120.0); }

// Explicit normal-equation closed form, kept as the test oracle for the solver.
Eigen::VectorXd normal_equations(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& w) {
    Eigen::MatrixXd W = w.asDiagonal();
    Eigen::MatrixXd XtWX = X.transpose() * W * X;
    return XtWX.inverse() * (X.transpose() * (W * y));
}

Signal received_through(const Signal& s, const WarpModel& w, int refine) {
    Grid rg = widened_receive_grid(w, s.grid, refine);
    return apply_warp(s, w, rg);
}

}  // namespace

TEST_CASE("design_matrix shapes and columns") {
    Grid g(0.0, 1.0, 256);
    Signal s0 = uniform_density(g);
    Scdt x = scdt::scdt(s0, s0);  // identity pos map, trivial neg part

    SUBCASE("degree 0 polynomial: single all-ones column") {
        Eigen::MatrixXd X = design_matrix(x, WarpFamily::polynomial, 0);
        REQUIRE(X.rows() == g.n);  // trivial part contributes no rows
        REQUIRE(X.cols() == 1);
        CHECK((X.array() == 1.0).all());
    }
    SUBCASE("affine on identity maps gives [t, 1]") {
        Eigen::MatrixXd X = design_matrix(x, WarpFamily::affine, 0);
        REQUIRE(X.cols() == 2);
        for (int k = 0; k < 10; ++k) {
            CHECK(X(k, 0) == doctest::Approx(x.pos_map[k]));
            CHECK(X(k, 1) == 1.0);
        }
    }
    SUBCASE("cubic vandermonde on the gabor transform has full numeric rank") {
        Grid gg(0.0, 1.0, 2048);
        Scdt xg = scdt::scdt(gabor_pulse(gg), s0);
        Eigen::MatrixXd X = design_matrix(xg, WarpFamily::polynomial, 3);
        REQUIRE(X.cols() == 4);
        REQUIRE(X.rows() == 2 * g.n);  // both parts nontrivial
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(X);
        CHECK(svd.singularValues()(3) > 1e-10 * svd.singularValues()(0));
    }
    SUBCASE("degenerate when fewer distinct values than columns") {
        Scdt flat{g, std::vector<double>(g.n, 0.7), 1.0, std::vector<double>(g.n, 0.0), 0.0};
        CHECK_THROWS_AS(design_matrix(flat, WarpFamily::affine, 0), DegenerateDesignError);
    }
}

TEST_CASE("solve_stacked_lsq") {
    oracle::Rng rng(17);

    SUBCASE("identity basis reproduces the target") {
        Eigen::MatrixXd X = Eigen::MatrixXd::Identity(4, 4);
        Eigen::VectorXd y(4);
        y << 1.0, -2.0, 0.5, 3.0;
        Eigen::VectorXd w = Eigen::VectorXd::Ones(4);
        Eigen::VectorXd q = solve_stacked_lsq(X, y, w);
        for (int k = 0; k < 4; ++k) CHECK(q(k) == doctest::Approx(y(k)));
    }
    SUBCASE("exact linear data") {
        int n = 50;
        Eigen::MatrixXd X(n, 2);
        Eigen::VectorXd y(n);
        for (int k = 0; k < n; ++k) {
            double t = k / double(n - 1);
            X(k, 0) = t;
            X(k, 1) = 1.0;
            y(k) = 3.0 * t + 2.0;
        }
        Eigen::VectorXd q = solve_stacked_lsq(X, y, Eigen::VectorXd::Ones(n));
        CHECK(std::abs(q(0) - 3.0) < 1e-12);
        CHECK(std::abs(q(1) - 2.0) < 1e-12);
    }
    SUBCASE("matches the normal-equation oracle on random systems") {
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::MatrixXd X(200, 4);
            Eigen::VectorXd y(200), w(200);
            for (int i = 0; i < 200; ++i) {
                for (int j = 0; j < 4; ++j) X(i, j) = rng.uniform(-1.0, 1.0);
                y(i) = rng.uniform(-1.0, 1.0);
                w(i) = rng.uniform(0.1, 2.0);
            }
            double cond = 0.0;
            Eigen::VectorXd got = solve_stacked_lsq(X, y, w, &cond);
            Eigen::VectorXd want = normal_equations(X, y, w);
            CHECK((got - want).norm() / want.norm() < 1e-10);
            CHECK(cond < 1e6);
        }
    }
    SUBCASE("rank deficiency throws") {
        Eigen::MatrixXd X(10, 2);
        for (int i = 0; i < 10; ++i) {
            X(i, 0) = 1.0;
            X(i, 1) = 2.0;  // dependent columns
        }
        CHECK_THROWS_AS(
            solve_stacked_lsq(X, Eigen::VectorXd::Ones(10), Eigen::VectorXd::Ones(10)),
            DegenerateDesignError);
    }
}

TEST_CASE("estimate_warp identity: regressing the transform on itself") {
    Grid g(0.0, 1.0, 1024);
    Signal s = gabor_pulse(g);
    Signal s0 = uniform_density(Grid(0.0, 1.0, 997));
    EstimationResult res = estimate_warp(s, s, s0, WarpFamily::polynomial, 1);
    CHECK(std::abs(res.model.coefficients()[0] - 0.0) < 1e-6);
    CHECK(std::abs(res.model.coefficients()[1] - 1.0) < 1e-6);
    CHECK(res.residual >= 0.0);
}

TEST_CASE("estimate_warp affine recovers a linear shift") {
    Grid g(0.0, 1.0, 2048);
    Signal s = gabor_pulse(g);
    Signal s0 = uniform_density(Grid(0.0, 1.0, 1987));
    WarpModel truth = WarpModel::affine(1.0, 0.1);
    Signal r = received_through(s, truth, 4);
    EstimationResult res = estimate_warp(r, s, s0, WarpFamily::affine);
    CHECK(std::abs(res.model.coefficients()[0] - 1.0) < 1e-2);
    CHECK(std::abs(res.model.coefficients()[1] - 0.1) < 1e-2);
    // recovered warp is increasing across the data span
    CHECK(res.monotone_on.second > res.monotone_on.first);
}

TEST_CASE("estimate_warp recovers a cubic warp") {
    Grid g(0.0, 1.0, 2048);
    Signal s = gabor_pulse(g);
    Signal s0 = uniform_density(Grid(0.0, 1.0, 1987));
    WarpModel truth = WarpModel::polynomial({0.1, 0.01, 1.0, 2.0});
    Signal r = received_through(s, truth, 4);
    EstimationResult res = estimate_warp(r, s, s0, WarpFamily::polynomial, 3);
    const auto& q = res.model.coefficients();
    const std::vector<double> want = {0.1, 0.01, 1.0, 2.0};
    for (size_t k = 0; k < want.size(); ++k) {
        if (std::abs(want[k]) < 0.05)
            CHECK(std::abs(q[k] - want[k]) <= 5e-3);
        else
            CHECK(oracle::rel_err(q[k], want[k]) <= 0.05);
    }
}

TEST_CASE("estimate_warp exponential and logarithmic closed forms") {
    Grid g(0.0, 1.0, 2048);
    Signal s = gabor_pulse(g);
    Signal s0 = uniform_density(Grid(0.0, 1.0, 1987));

    SUBCASE("exponential") {
        WarpModel truth = WarpModel::exponential(1.2, -0.8);
        Signal r = received_through(s, truth, 4);
        EstimationResult res = estimate_warp(r, s, s0, WarpFamily::exponential);
        CHECK(std::abs(res.model.coefficients()[0] - 1.2) < 1e-2);
        CHECK(std::abs(res.model.coefficients()[1] + 0.8) < 1e-2);
    }
    SUBCASE("logarithmic") {
        WarpModel truth = WarpModel::logarithmic(2.0, 1.5);
        Signal r = received_through(s, truth, 4);
        EstimationResult res = estimate_warp(r, s, s0, WarpFamily::logarithmic);
        CHECK(std::abs(res.model.coefficients()[0] - 2.0) < 2e-2);
        CHECK(std::abs(res.model.coefficients()[1] - 1.5) < 2e-2);
    }
    SUBCASE("log branch on nonpositive map values hits DomainError") {
        Grid neg(-0.5, 0.5, 1024);
        Signal sneg = gabor(neg, 0.0, 40.0 * kPi, 120.0);
        Signal ref = uniform_density(Grid(-0.5, 0.5, 997));
        CHECK_THROWS_AS(estimate_warp(sneg, sneg, ref, WarpFamily::exponential),
                        DomainError);
    }
}

TEST_CASE("recovery error decreases with resolution") {
    Signal s0 = uniform_density(Grid(0.0, 1.0, 1987));
    WarpModel truth = WarpModel::polynomial({0.1, 0.01, 1.0, 2.0});
    double prev = 1e300;
    for (int n : {512, 2048, 8192}) {
        Grid g(0.0, 1.0, n);
        Signal s = gabor_pulse(g);
        Signal r = received_through(s, truth, 4);
        EstimationResult res = estimate_warp(r, s, s0, WarpFamily::polynomial, 3);
        double worst = 0.0;
        for (size_t k = 0; k < 4; ++k)
            worst = std::max(worst, std::abs(res.model.coefficients()[k] -
                                             truth.coefficients()[k]));
        CHECK(worst < prev);
        prev = worst;
    }
}

TEST_CASE("equivalent formulations: forward fit matches composed prediction") {
    Grid g(0.0, 1.0, 2048);
    Signal s = gabor_pulse(g);
    Signal s0 = uniform_density(Grid(0.0, 1.0, 1987));
    WarpModel truth = WarpModel::affine(1.4, -0.2);
    Signal r = received_through(s, truth, 4);
    EstimationResult res = estimate_warp(r, s, s0, WarpFamily::affine);
    const WarpModel& ghat = res.model;

    // composition-property prediction: r_hat ~ g^{-1}(s_hat)
    Scdt r_hat = scdt::scdt(r, s0);
    Scdt s_hat = scdt::scdt(s, s0);
    Scdt predicted =
        compose_scdt([&](double y) { return ghat.inverse(y, 0, 0); }, s_hat);
    double worst = 0.0;
    for (int k = 0; k < s0.grid.n; ++k) {
        worst = std::max(worst, std::abs(predicted.pos_map[k] - r_hat.pos_map[k]));
        worst = std::max(worst, std::abs(predicted.neg_map[k] - r_hat.neg_map[k]));
    }
    CHECK(worst < 5.0 * g.dt());
}

TEST_CASE("part mismatch between template and received signal") {
    Grid g(0.0, 1.0, 512);
    Signal s0 = uniform_density(g);
    Signal pos_only = normalize_l1(jordan_decompose(gabor(g, 0.5, 0.0, 100.0)).pos);
    Signal signed_sig = gabor_pulse(g);
    CHECK_THROWS_AS(estimate_warp(pos_only, signed_sig, s0, WarpFamily::affine),
                    PartMismatchError);
}

TEST_CASE("cost surface") {
    Grid g(0.0, 1.0, 1024);
    Signal s = gabor_pulse(g);
    Signal s0 = uniform_density(Grid(0.0, 1.0, 997));
    WarpModel truth = WarpModel::affine(1.0, 0.1);
    Signal r = received_through(s, truth, 4);

    GridSearchSpec window{{AxisSpec(0.8, 1.2, 21), AxisSpec(-0.1, 0.3, 21)}};
    Surface surf = cost_surface(r, s, s0, WarpFamily::affine, window);

    SUBCASE("true parameters sit at the global minimum cell") {
        auto [i, j] = surf.argmin_cell();
        CHECK(surf.ax1.value(i) == doctest::Approx(1.0));
        CHECK(surf.ax2.value(j) == doctest::Approx(0.1));
    }
    SUBCASE("values are an exact quadratic in the parameters") {
        // fit J(a,b) = c0 + c1 a + c2 b + c3 a^2 + c4 a b + c5 b^2
        Eigen::MatrixXd X(surf.values.size(), 6);
        Eigen::VectorXd y(surf.values.size());
        size_t r_ = 0;
        for (int i = 0; i < surf.ax1.steps; ++i)
            for (int j = 0; j < surf.ax2.steps; ++j, ++r_) {
                double a = surf.ax1.value(i), b = surf.ax2.value(j);
                X.row(r_) << 1.0, a, b, a * a, a * b, b * b;
                y(r_) = surf.at(i, j);
            }
        Eigen::VectorXd c = X.colPivHouseholderQr().solve(y);
        double scale = y.cwiseAbs().maxCoeff();
        CHECK(((X * c - y).cwiseAbs().maxCoeff()) <= 1e-9 * std::max(1.0, scale));
    }
    SUBCASE("hessian of the objective is positive semidefinite") {
        Scdt r_hat = scdt::scdt(r, s0);
        Eigen::MatrixXd X = design_matrix(r_hat, WarpFamily::affine, 0);
        Eigen::VectorXd w(X.rows());
        double dt0 = s0.dt();
        for (int k = 0; k < X.rows(); ++k)
            w(k) = s0.values[k % s0.grid.n] * dt0;
        Eigen::MatrixXd H = 2.0 * X.transpose() * w.asDiagonal() * X;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        CHECK(es.eigenvalues().minCoeff() >= -1e-9);
    }
    SUBCASE("convexity audit passes") {
        CHECK(convexity_audit(surf));
    }
}

TEST_CASE("objective is convex along random parameter segments") {
    Grid g(0.0, 1.0, 1024);
    Signal s = gabor_pulse(g);
    Signal s0 = uniform_density(Grid(0.0, 1.0, 997));
    Signal r = received_through(s, WarpModel::affine(1.1, 0.05), 4);
    Scdt r_hat = scdt::scdt(r, s0), s_hat = scdt::scdt(s, s0);

    Eigen::MatrixXd X = design_matrix(r_hat, WarpFamily::polynomial, 2);
    Eigen::VectorXd y(X.rows()), w(X.rows());
    double dt0 = s0.dt();
    for (int k = 0; k < s0.grid.n; ++k) {
        y(k) = s_hat.pos_map[k];
        y(s0.grid.n + k) = s_hat.neg_map[k];
        w(k) = w(s0.grid.n + k) = s0.values[k] * dt0;
    }
    auto J = [&](const Eigen::Vector3d& p) {
        return (w.array() * (X * p - y).array().square()).sum();
    };
    oracle::Rng rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::Vector3d p0(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        Eigen::Vector3d dir(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        std::vector<double> vals;
        for (int k = -5; k <= 5; ++k) vals.push_back(J(p0 + 0.2 * k * dir));
        for (size_t k = 1; k + 1 < vals.size(); ++k) {
            double second = vals[k + 1] - 2.0 * vals[k] + vals[k - 1];
            CHECK(second >= -1e-9 * std::max(1.0, std::abs(vals[k])));
        }
    }
}
