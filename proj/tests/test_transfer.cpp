#include "doctest.h"

#include "oracles.hpp"
#include "stmg/cycles.hpp"
#include "stmg/transfer.hpp"

using namespace stmg;
using oracle::Matrix;

namespace {

std::vector<double> flat(const SpaceTimeField& f) { return {f.values().begin(), f.values().end()}; }

SpaceTimeField field_of(const std::vector<double>& v, std::size_t nx, std::size_t nt) {
    SpaceTimeField f(nx, nt);
    std::copy(v.begin(), v.end(), f.values().begin());
    return f;
}

void check_equal(const Matrix& a, const Matrix& b, double tol = 1e-15) {
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    CHECK((a - b).cwiseAbs().maxCoeff() <= tol);
}

}  // namespace

TEST_CASE("space stencils against the 1-based formulas") {
    for (bool periodic : {false, true}) {
        const std::size_t nf = periodic ? 16 : 15;
        const Closure c = periodic ? Closure::Periodic : Closure::Dirichlet;
        const std::size_t nc = oracle::coarse_space(nf, periodic);
        auto r = oracle::assemble(nf, [&](const std::vector<double>& v) { return restrict_space(v, c); });
        check_equal(r, oracle::fw_1d(nf, nc, periodic));
        auto p = oracle::assemble(nc, [&](const std::vector<double>& v) { return prolong_space(v, c); });
        check_equal(p, oracle::interp_1d(nf, nc, periodic));
        check_equal(p, 2.0 * r.transpose());
    }
}

TEST_CASE("field transfers are tensor products") {
    struct Case {
        std::size_t nx, nt;
        bool periodic;
    };
    for (Case k : {Case{7, 8, false}, Case{15, 16, false}, Case{8, 16, true}}) {
        const Closure c = k.periodic ? Closure::Periodic : Closure::Dirichlet;
        for (auto [mt, mx] : {std::pair{2, 2}, std::pair{2, 1}, std::pair{4, 2}, std::pair{4, 1}, std::pair{1, 2}}) {
            CAPTURE(mt);
            CAPTURE(mx);
            const std::size_t ncx = mx == 2 ? oracle::coarse_space(k.nx, k.periodic) : k.nx;
            const std::size_t nct = k.nt / static_cast<std::size_t>(mt);
            auto r = oracle::assemble(k.nx * k.nt, [&](const std::vector<double>& v) {
                return flat(restrict_field(field_of(v, k.nx, k.nt), mt, mx, c));
            });
            check_equal(r, oracle::restriction(k.nx, k.nt, mt, mx, k.periodic));
            auto p = oracle::assemble(ncx * nct, [&](const std::vector<double>& v) {
                return flat(prolong_field(field_of(v, ncx, nct), mt, mx, c));
            });
            check_equal(p, oracle::interpolation(k.nx, k.nt, mt, mx, k.periodic));
            check_equal(p, static_cast<double>(mt * mx) * r.transpose(), 1e-14);
        }
    }
}

TEST_CASE("two-step composite equals the direct (4,2) transfer bitwise") {
    auto f = random_field(15, 32, 9);
    auto direct = restrict_new(f);
    auto two = restrict_field(restrict_field(f, 2, 2), 2, 1);
    for (std::size_t i = 0; i < direct.size(); ++i) CHECK(direct.values()[i] == two.values()[i]);

    auto c = random_field(7, 8, 10);
    auto up = prolong_new(c);
    auto up2 = prolong_field(prolong_field(c, 2, 1), 2, 2);
    for (std::size_t i = 0; i < up.size(); ++i) CHECK(up.values()[i] == up2.values()[i]);
}

TEST_CASE("stage counts and transfer pair") {
    CHECK(transfer_stages(4, 2) == 3);
    CHECK(transfer_stages(2, 2) == 2);
    CHECK(transfer_stages(2, 1) == 1);
    TransferPair t{2, 1, Closure::Dirichlet};
    auto f = random_field(5, 8, 1);
    auto c = t.restrict_(f);
    CHECK(c.n_x() == 5);
    CHECK(c.n_t() == 4);
    CHECK(t.prolong(c).same_shape(f));
}

TEST_CASE("transfers reject inadmissible shapes") {
    CHECK_THROWS_AS(restrict_field(SpaceTimeField(6, 8), 2, 2), UsageError);
    CHECK_THROWS_AS(restrict_field(SpaceTimeField(7, 6), 4, 2), UsageError);
    CHECK_THROWS_AS(restrict_field(SpaceTimeField(7, 8), 3, 1), UsageError);
}
