#include "stmg/heat.hpp"

#include <cmath>

#include "stmg/parallel.hpp"

namespace stmg {

ProblemData ProblemData::benchmark() {
    ProblemData p;
    p.horizon = 0.1;
    p.source = [](double x, double t) {
        const double b = x * (1.0 - x);
        return b * b * b * b + 10.0 * std::sin(8.0 * t);
    };
    p.initial = [](double) { return 0.0; };
    return p;
}

HeatOperator assemble_operator(const SpaceTimeGrid& g) {
    const double s = g.sigma();
    const std::size_t n = g.n_x();
    TridiagonalMatrix q;
    q.diag.assign(n, 1.0 + 2.0 * s);
    q.sub.assign(n - 1, -s);
    q.super.assign(n - 1, -s);
    TridiagonalSolver solver(q);
    return HeatOperator{g, std::move(q), std::move(solver)};
}

SpaceTimeField assemble_rhs(const SpaceTimeGrid& g, const ProblemData& p) {
    if (!p.source || !p.initial) throw UsageError("problem data needs a source and an initial value");
    if (std::abs(p.horizon - g.horizon()) > 1e-12 * g.horizon()) {
        throw UsageError("problem horizon does not match the grid");
    }
    SpaceTimeField rhs(g);
    const double h = g.h();
    const double tau = g.tau();
    for (std::size_t n = 0; n < g.n_t(); ++n) {
        const double t = tau * static_cast<double>(n + 1);
        for (std::size_t j = 0; j < g.n_x(); ++j) {
            rhs(n, j) = tau * p.source(h * static_cast<double>(j + 1), t);
        }
    }
    for (std::size_t j = 0; j < g.n_x(); ++j) rhs(0, j) += p.initial(h * static_cast<double>(j + 1));
    return rhs;
}

namespace {

void check_shape(const HeatOperator& op, const SpaceTimeField& u) {
    if (u.n_x() != op.grid.n_x() || u.n_t() != op.grid.n_t()) {
        throw UsageError("field does not match operator grid");
    }
}

}  // namespace

SpaceTimeField apply_operator(const HeatOperator& op, const SpaceTimeField& u) {
    check_shape(op, u);
    SpaceTimeField out(op.grid);
    parallel_for(0, u.n_t(), [&](std::size_t n) {
        auto y = out.block(n);
        op.q.multiply(u.block(n), y);
        if (n > 0) {
            auto prev = u.block(n - 1);
            for (std::size_t j = 0; j < y.size(); ++j) y[j] -= prev[j];
        }
    });
    return out;
}

SpaceTimeField residual(const HeatOperator& op, const SpaceTimeField& u, const SpaceTimeField& rhs) {
    check_shape(op, rhs);
    SpaceTimeField r = apply_operator(op, u);
    auto rv = r.values();
    auto fv = rhs.values();
    for (std::size_t i = 0; i < rv.size(); ++i) rv[i] = fv[i] - rv[i];
    return r;
}

SpaceTimeField direct_solve(const HeatOperator& op, const SpaceTimeField& rhs) {
    check_shape(op, rhs);
    SpaceTimeField u = rhs;
    for (std::size_t n = 0; n < u.n_t(); ++n) {
        auto b = u.block(n);
        if (n > 0) {
            auto prev = u.block(n - 1);
            for (std::size_t j = 0; j < b.size(); ++j) b[j] += prev[j];
        }
        op.q_solver.solve_in_place(b);
    }
    return u;
}

double error_norm(const SpaceTimeField& u, const SpaceTimeField& ref, const SpaceTimeGrid& g) {
    if (!u.same_shape(ref) || u.n_x() != g.n_x() || u.n_t() != g.n_t()) {
        throw UsageError("error_norm: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t n = 0; n < u.n_t(); ++n) {
        double acc = 0.0;
        for (std::size_t j = 0; j < u.n_x(); ++j) {
            const double d = u(n, j) - ref(n, j);
            acc += d * d;
        }
        worst = std::max(worst, std::sqrt(g.h() * acc));
    }
    return worst;
}

DenseMatrix<double> assemble_dense(const HeatOperator& op) {
    const std::size_t nx = op.grid.n_x();
    const std::size_t nt = op.grid.n_t();
    DenseMatrix<double> m(nx * nt, nx * nt);
    for (std::size_t n = 0; n < nt; ++n) {
        for (std::size_t j = 0; j < nx; ++j) {
            const std::size_t row = n * nx + j;
            m(row, row) = op.q.diag[j];
            if (j > 0) m(row, row - 1) = op.q.sub[j - 1];
            if (j + 1 < nx) m(row, row + 1) = op.q.super[j];
            if (n > 0) m(row, row - nx) = -1.0;
        }
    }
    return m;
}

}  // namespace stmg
