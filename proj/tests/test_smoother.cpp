#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "stmg/cycles.hpp"
#include "stmg/smoother.hpp"

using namespace stmg;

namespace {

Eigen::VectorXd to_eigen(const SpaceTimeField& f) {
    return Eigen::Map<const Eigen::VectorXd>(f.values().data(), static_cast<Eigen::Index>(f.size()));
}

}  // namespace

TEST_CASE("one sweep is u + omega D^-1 (f - L u)") {
    SpaceTimeGrid g(7, 5, 0.4);
    auto op = assemble_operator(g);
    auto L = oracle::heat_matrix(7, 5, g.sigma());
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(L.rows(), L.cols());
    for (Eigen::Index b = 0; b < 5; ++b) D.block(b * 7, b * 7, 7, 7) = L.block(b * 7, b * 7, 7, 7);

    auto u = random_field(7, 5, 1), f = random_field(7, 5, 2);
    for (double w : {0.3, 1.0}) {
        Eigen::VectorXd ref = to_eigen(u) + w * D.partialPivLu().solve(to_eigen(f) - L * to_eigen(u));
        auto mine = jacobi_sweep(op, u, f, SmootherConfig{w, 1});
        for (std::size_t i = 0; i < u.size(); ++i) CHECK(mine.values()[i] == doctest::Approx(ref(i)).epsilon(1e-13));
    }
    auto two = jacobi_sweep(op, u, f, SmootherConfig{0.5, 2});
    auto twice = jacobi_sweep(op, jacobi_sweep(op, u, f, SmootherConfig{0.5, 1}), f, SmootherConfig{0.5, 1});
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(two.values()[i] == twice.values()[i]);
    auto none = jacobi_sweep(op, u, f, SmootherConfig{0.5, 0});
    CHECK((none - u).max_abs() == 0.0);
}

TEST_CASE("smoother configuration is validated") {
    CHECK_THROWS_AS(SmootherConfig({0.0, 1}).validate(), UsageError);
    CHECK_THROWS_AS(SmootherConfig({1.2, 1}).validate(), UsageError);
    CHECK_THROWS_AS(SmootherConfig({0.5, -1}).validate(), UsageError);
    CHECK_NOTHROW(SmootherConfig({1.0, 0}).validate());
    CHECK(smoother_error_matrix_radius(0.25) == 0.75);
    CHECK(smoother_error_matrix_radius(1.5) == 0.5);
    CHECK_THROWS_AS(smoother_error_matrix_radius(2.0), UsageError);
}

TEST_CASE("periodic sweep matches the wrap-around stencil") {
    PeriodicGrid pg{8, 4, 1.3};
    PeriodicHeatOperator op(pg);
    auto L = oracle::periodic_heat_matrix(8, 4, 1.3);
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(L.rows(), L.cols());
    for (Eigen::Index b = 0; b < 4; ++b) D.block(b * 8, b * 8, 8, 8) = L.block(b * 8, b * 8, 8, 8);
    auto u = random_field(8, 4, 3), f = random_field(8, 4, 4);
    Eigen::VectorXd ref = to_eigen(u) + 0.6 * D.partialPivLu().solve(to_eigen(f) - L * to_eigen(u));
    jacobi_sweep_in_place(op, u, f, SmootherConfig{0.6, 1});
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(u.values()[i] == doctest::Approx(ref(i)).epsilon(1e-13));
}

TEST_CASE("column-reduced search equals the plain grid search") {
    for (auto s : {oracle::Step{2, 1}, oracle::Step{4, 1}, oracle::Step{1, 2}, oracle::Step{2, 2}, oracle::Step{4, 2}})
        for (double sigma : {0.01, 0.3, 5.0})
            for (double w : {0.2, 0.5, 0.9}) {
                CHECK(oracle::mu_grid_columns(s, w, sigma) == doctest::Approx(oracle::mu_grid_2d(s, w, sigma)).epsilon(1e-14));
            }
}

TEST_CASE("closed-form damping against a brute-force minimizer") {
    struct Named {
        CoarseningStrategy s;
        oracle::Step step;
    };
    for (auto [s, step] : {Named{CoarseningStrategy::TimeSemi2, {2, 1}}, Named{CoarseningStrategy::TimeSemi4, {4, 1}},
                           Named{CoarseningStrategy::SpaceSemi, {1, 2}}, Named{CoarseningStrategy::Full, {2, 2}},
                           Named{CoarseningStrategy::New, {4, 2}}})
        for (double sigma : {0.002, 0.05, 0.5, 20.0}) {
            CAPTURE(to_string(s));
            CAPTURE(sigma);
            CHECK(std::abs(optimal_omega(s, sigma) - oracle::brute_omega(step, sigma)) <= 2e-3);
        }
    CHECK(optimal_omega(CoarseningStrategy::Original, 0.05) == optimal_omega(CoarseningStrategy::Full, 0.05));
    CHECK_THROWS_AS(optimal_omega(CoarseningStrategy::New, 0.0), UsageError);
}

TEST_CASE("branches meet one half at the thresholds") {
    CHECK(full_threshold() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(new_threshold() == doctest::Approx(0.08979).epsilon(1e-4));
    CHECK(std::abs(full_branch(1.0 + 2.0 * full_threshold()) - 0.5) <= 1e-12);
    CHECK(std::abs(new_branch(1.0 + 2.0 * new_threshold()) - 0.5) <= 1e-12);
    // below the threshold the branch exceeds one half, so damping grows as sigma shrinks
    CHECK(full_branch(1.0 + 2.0 * 0.1) > 0.5);
    CHECK(new_branch(1.0 + 2.0 * 0.01) > 0.5);
    CHECK(optimal_omega(CoarseningStrategy::New, 1e-6) < 1.0);
}
