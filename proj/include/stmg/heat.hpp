#pragma once

#include <functional>

#include "stmg/core.hpp"
#include "stmg/dense.hpp"

namespace stmg {

/// Source, initial value and horizon of u_t = u_xx + f on (0,1) x (0,T].
struct ProblemData {
    double horizon = 0.1;
    std::function<double(double, double)> source;  // f(x, t)
    std::function<double(double)> initial;          // u0(x)

    /// f = x^4 (1-x)^4 + 10 sin(8t), u0 = 0, T = 0.1.
    static ProblemData benchmark();
};

/**
 * Backward Euler / centered differences all-at-once operator. Block row n is
 * Q u_n - u_{n-1} with Q = I - tau A_h = tridiag(-sigma, 1 + 2 sigma, -sigma);
 * the coupling B is the identity and is not stored.
 */
struct HeatOperator {
    SpaceTimeGrid grid;
    TridiagonalMatrix q;
    TridiagonalSolver q_solver;
};

HeatOperator assemble_operator(const SpaceTimeGrid& g);

/// Block n holds tau f(x_j, t_n); block 1 also carries u0.
SpaceTimeField assemble_rhs(const SpaceTimeGrid& g, const ProblemData& p);

SpaceTimeField apply_operator(const HeatOperator& op, const SpaceTimeField& u);
/// rhs - L u
SpaceTimeField residual(const HeatOperator& op, const SpaceTimeField& u, const SpaceTimeField& rhs);

/// Sequential time stepping u_n = Q^{-1}(rhs_n + u_{n-1}).
SpaceTimeField direct_solve(const HeatOperator& op, const SpaceTimeField& rhs);

/// max_n sqrt(h sum_j (u - ref)^2), the discrete L^inf(0,T; L^2) norm.
double error_norm(const SpaceTimeField& u, const SpaceTimeField& ref, const SpaceTimeGrid& g);

/// Dense copy of L, row/column index n * n_x + j. Small grids only.
DenseMatrix<double> assemble_dense(const HeatOperator& op);

/**
 * Doubly periodic validation grid: n_x points per spatial period, n_t steps
 * per temporal period. sigma is given directly since no physical interval is
 * attached.
 */
struct PeriodicGrid {
    std::size_t n_x = 0;
    std::size_t n_t = 0;
    double sigma = 0.0;

    bool admits(int mt, int mx) const;
    PeriodicGrid coarsen(int mt, int mx) const;
    std::size_t size() const { return n_x * n_t; }
};

/// Circulant-in-space, wrap-around-in-time analogue of HeatOperator.
class PeriodicHeatOperator {
public:
    explicit PeriodicHeatOperator(const PeriodicGrid& g);

    const PeriodicGrid& grid() const { return grid_; }

    SpaceTimeField apply(const SpaceTimeField& u) const;
    /// Solves Q x = rhs on one block in place.
    void solve_block(std::span<double> x) const;
    /// Pseudo-inverse solve; the constant null vector is projected out.
    SpaceTimeField pseudo_solve(const SpaceTimeField& rhs) const;

    DenseMatrix<double> dense() const;

private:
    PeriodicGrid grid_;
    LuFactorization<double> q_lu_;
    mutable std::vector<double> pinv_;  // lazily assembled pseudo-inverse
};

PeriodicHeatOperator assemble_periodic_operator(const PeriodicGrid& g);
/// Uses n_x, n_t and sigma of a Dirichlet grid as the periodic counts.
PeriodicHeatOperator assemble_periodic_operator(const SpaceTimeGrid& g);

}  // namespace stmg
