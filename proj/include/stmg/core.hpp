#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stmg {

/// Raised for inadmissible sizes, factors or parameters supplied by a caller.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Discretization geometry of one space-time level.
 *
 * The spatial domain is (0,1) with homogeneous Dirichlet ends that are not
 * stored, so h = 1/(n_x + 1). Time points t_n = n*tau for n = 1..n_t; t_0
 * carries the initial condition and is not an unknown.
 */
class SpaceTimeGrid {
public:
    SpaceTimeGrid(std::size_t n_x, std::size_t n_t, double horizon);

    std::size_t n_x() const { return n_x_; }
    std::size_t n_t() const { return n_t_; }
    double horizon() const { return horizon_; }
    double h() const { return 1.0 / static_cast<double>(n_x_ + 1); }
    double tau() const { return horizon_ / static_cast<double>(n_t_); }
    double sigma() const { return tau() / (h() * h()); }
    std::size_t size() const { return n_x_ * n_t_; }

    /// True when the grid can be coarsened by mt in time and mx in space.
    bool admits(int mt, int mx) const;

    friend bool operator==(const SpaceTimeGrid&, const SpaceTimeGrid&) = default;

private:
    std::size_t n_x_;
    std::size_t n_t_;
    double horizon_;
};

/// Coarse grid with n_t/mt steps and (n_x+1)/mx - 1 interior points.
SpaceTimeGrid coarsen_grid(const SpaceTimeGrid& g, int mt, int mx);

/// n_t blocks of n_x values, stored time-major (block n is time level n+1).
class SpaceTimeField {
public:
    SpaceTimeField() = default;
    SpaceTimeField(std::size_t n_x, std::size_t n_t, double value = 0.0)
        : n_x_(n_x), n_t_(n_t), values_(n_x * n_t, value) {}
    explicit SpaceTimeField(const SpaceTimeGrid& g, double value = 0.0)
        : SpaceTimeField(g.n_x(), g.n_t(), value) {}

    std::size_t n_x() const { return n_x_; }
    std::size_t n_t() const { return n_t_; }
    std::size_t size() const { return values_.size(); }

    std::span<double> block(std::size_t n) { return {values_.data() + n * n_x_, n_x_}; }
    std::span<const double> block(std::size_t n) const { return {values_.data() + n * n_x_, n_x_}; }

    double& operator()(std::size_t n, std::size_t j) { return values_[n * n_x_ + j]; }
    double operator()(std::size_t n, std::size_t j) const { return values_[n * n_x_ + j]; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    bool same_shape(const SpaceTimeField& o) const { return n_x_ == o.n_x_ && n_t_ == o.n_t_; }

    SpaceTimeField& operator+=(const SpaceTimeField& o);
    SpaceTimeField& operator-=(const SpaceTimeField& o);
    SpaceTimeField& operator*=(double s);

    /// Largest absolute entry.
    double max_abs() const;

private:
    std::size_t n_x_ = 0;
    std::size_t n_t_ = 0;
    std::vector<double> values_;
};

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator*(double s, SpaceTimeField a);

struct TridiagonalMatrix {
    std::vector<double> sub;    // n-1
    std::vector<double> diag;   // n
    std::vector<double> super;  // n-1

    std::size_t size() const { return diag.size(); }
    bool is_symmetric() const { return sub == super; }
    void validate() const;

    /// y = M x
    std::vector<double> multiply(std::span<const double> x) const;
    void multiply(std::span<const double> x, std::span<double> y) const;
};

/// Solves m x = rhs by the Thomas algorithm. m must be diagonally dominant.
std::vector<double> thomas_solve(const TridiagonalMatrix& m, std::span<const double> rhs);

/**
 * Thomas elimination factored once and reused for many right-hand sides.
 * Used for the per-time-block solves with Q = I - tau A_h.
 */
class TridiagonalSolver {
public:
    TridiagonalSolver() = default;
    explicit TridiagonalSolver(const TridiagonalMatrix& m);

    std::size_t size() const { return inv_pivot_.size(); }

    /// Overwrites x (holding the rhs) with the solution.
    void solve_in_place(std::span<double> x) const;

private:
    std::vector<double> sub_;
    std::vector<double> upper_;      // modified super-diagonal c'
    std::vector<double> inv_pivot_;  // 1 / (b_i - a_i c'_{i-1})
};

}  // namespace stmg
