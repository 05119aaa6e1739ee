#include "doctest.h"

#include <random>

#include <Eigen/Dense>

#include "stmg/core.hpp"
#include "stmg/strategy.hpp"

using namespace stmg;

TEST_CASE("grid spacing and sigma") {
    SpaceTimeGrid g(63, 2624, 0.1);
    CHECK(g.h() == doctest::Approx(1.0 / 64));
    CHECK(g.tau() == doctest::Approx(0.1 / 2624));
    CHECK(g.sigma() == doctest::Approx(0.1 / 2624 * 4096).epsilon(1e-14));
    CHECK(g.size() == 63u * 2624u);
}

TEST_CASE("grid rejects empty sizes and bad horizons") {
    CHECK_THROWS_AS(SpaceTimeGrid(0, 4, 1.0), UsageError);
    CHECK_THROWS_AS(SpaceTimeGrid(3, 0, 1.0), UsageError);
    CHECK_THROWS_AS(SpaceTimeGrid(3, 4, 0.0), UsageError);
    CHECK_THROWS_AS(SpaceTimeGrid(3, 4, -1.0), UsageError);
    CHECK_NOTHROW(SpaceTimeGrid(1, 1, 1.0));
}

TEST_CASE("coarsening keeps the horizon and maps counts") {
    SpaceTimeGrid g(31, 64, 0.5);
    auto c = coarsen_grid(g, 4, 2);
    CHECK(c.n_x() == 15);
    CHECK(c.n_t() == 16);
    CHECK(c.horizon() == 0.5);
    // sigma is preserved by (4,2)
    CHECK(c.sigma() == doctest::Approx(g.sigma()).epsilon(1e-14));
    CHECK(coarsen_grid(g, 2, 2).sigma() == doctest::Approx(g.sigma() / 2).epsilon(1e-14));
    CHECK(coarsen_grid(g, 2, 1).n_x() == 31);

    CHECK_FALSE(SpaceTimeGrid(30, 64, 1.0).admits(2, 2));
    CHECK_FALSE(SpaceTimeGrid(31, 6, 1.0).admits(4, 2));
    CHECK_FALSE(SpaceTimeGrid(1, 8, 1.0).admits(2, 2));
    CHECK_FALSE(g.admits(3, 1));
    CHECK_FALSE(g.admits(2, 4));
    CHECK_THROWS_AS(coarsen_grid(SpaceTimeGrid(30, 64, 1.0), 2, 2), UsageError);
}

TEST_CASE("field arithmetic and layout") {
    SpaceTimeField a(3, 2, 1.0), b(3, 2, 2.0);
    a(1, 2) = -5.0;
    CHECK(a.values()[5] == -5.0);
    CHECK(a.block(1)[2] == -5.0);
    auto c = a + b;
    CHECK(c(1, 2) == -3.0);
    c -= b;
    CHECK(c(0, 0) == 1.0);
    CHECK((2.0 * c)(1, 2) == -10.0);
    CHECK(a.max_abs() == 5.0);
    SpaceTimeField d(2, 3);
    CHECK_THROWS_AS(a += d, UsageError);
}

TEST_CASE("thomas solve matches a dense solve") {
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {1u, 2u, 7u, 40u}) {
        TridiagonalMatrix m;
        m.diag.resize(n);
        m.sub.resize(n - 1);
        m.super.resize(n - 1);
        Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.diag[i] = 3.0 + u(gen);
            d(i, i) = m.diag[i];
            if (i + 1 < n) {
                m.sub[i] = u(gen);
                m.super[i] = u(gen);
                d(i + 1, i) = m.sub[i];
                d(i, i + 1) = m.super[i];
            }
        }
        Eigen::VectorXd rhs = Eigen::VectorXd::Random(n);
        std::vector<double> r(rhs.data(), rhs.data() + n);
        auto x = thomas_solve(m, r);
        Eigen::VectorXd ref = d.partialPivLu().solve(rhs);
        for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(ref(i)).epsilon(1e-13));

        auto y = m.multiply(x);
        for (std::size_t i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(r[i]).epsilon(1e-12));

        TridiagonalSolver s(m);
        s.solve_in_place(r);
        for (std::size_t i = 0; i < n; ++i) CHECK(r[i] == x[i]);
    }
}

TEST_CASE("tridiagonal validation") {
    TridiagonalMatrix m{{1.0}, {2.0, 2.0}, {}};
    CHECK_THROWS_AS(m.validate(), UsageError);
    TridiagonalMatrix z{{}, {0.0}, {}};
    CHECK_THROWS_AS(TridiagonalSolver{z}, UsageError);
    TridiagonalMatrix sym{{-1.0}, {2.0, 2.0}, {-1.0}};
    CHECK(sym.is_symmetric());
}

TEST_CASE("strategy names round trip") {
    for (auto s : {CoarseningStrategy::TimeSemi2, CoarseningStrategy::TimeSemi4, CoarseningStrategy::SpaceSemi,
                   CoarseningStrategy::Full, CoarseningStrategy::New, CoarseningStrategy::Original}) {
        CHECK(parse_strategy(to_string(s)) == s);
    }
    CHECK(parse_strategy("time-semi") == CoarseningStrategy::TimeSemi2);
    CHECK_THROWS_AS(parse_strategy("bogus"), UsageError);
    CHECK(time_factor(CoarseningStrategy::New) == 4);
    CHECK(space_factor(CoarseningStrategy::New) == 2);
    CHECK(time_factor(CoarseningStrategy::SpaceSemi) == 1);
    CHECK(space_factor(CoarseningStrategy::TimeSemi2) == 1);
}
