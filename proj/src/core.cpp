#include "stmg/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stmg {

SpaceTimeGrid::SpaceTimeGrid(std::size_t n_x, std::size_t n_t, double horizon)
    : n_x_(n_x), n_t_(n_t), horizon_(horizon) {
    if (n_x == 0 || n_t == 0) {
        throw UsageError("grid needs at least one spatial unknown and one time step");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw UsageError("time horizon must be positive and finite");
    }
}

bool SpaceTimeGrid::admits(int mt, int mx) const {
    if (mt != 1 && mt != 2 && mt != 4) return false;
    if (mx != 1 && mx != 2) return false;
    if (n_t_ % static_cast<std::size_t>(mt) != 0) return false;
    if ((n_x_ + 1) % static_cast<std::size_t>(mx) != 0) return false;
    // at least one coarse interior point and one coarse step must remain
    return (n_x_ + 1) / static_cast<std::size_t>(mx) >= 2 && n_t_ / static_cast<std::size_t>(mt) >= 1;
}

SpaceTimeGrid coarsen_grid(const SpaceTimeGrid& g, int mt, int mx) {
    if (!g.admits(mt, mx)) {
        throw UsageError("grid (n_x=" + std::to_string(g.n_x()) + ", n_t=" + std::to_string(g.n_t()) +
                         ") does not admit coarsening by (" + std::to_string(mt) + "," +
                         std::to_string(mx) + ")");
    }
    return SpaceTimeGrid((g.n_x() + 1) / static_cast<std::size_t>(mx) - 1,
                         g.n_t() / static_cast<std::size_t>(mt), g.horizon());
}

SpaceTimeField& SpaceTimeField::operator+=(const SpaceTimeField& o) {
    if (!same_shape(o)) throw UsageError("field shape mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

SpaceTimeField& SpaceTimeField::operator-=(const SpaceTimeField& o) {
    if (!same_shape(o)) throw UsageError("field shape mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

SpaceTimeField& SpaceTimeField::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

double SpaceTimeField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b) { return a += b; }
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b) { return a -= b; }
SpaceTimeField operator*(double s, SpaceTimeField a) { return a *= s; }

void TridiagonalMatrix::validate() const {
    if (diag.empty()) throw UsageError("empty tridiagonal matrix");
    if (sub.size() + 1 != diag.size() || super.size() + 1 != diag.size()) {
        throw UsageError("tridiagonal band lengths do not match");
    }
}

void TridiagonalMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    const std::size_t n = diag.size();
    if (x.size() != n || y.size() != n) throw UsageError("tridiagonal multiply: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        double acc = diag[i] * x[i];
        if (i > 0) acc += sub[i - 1] * x[i - 1];
        if (i + 1 < n) acc += super[i] * x[i + 1];
        y[i] = acc;
    }
}

std::vector<double> TridiagonalMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(diag.size());
    multiply(x, y);
    return y;
}

std::vector<double> thomas_solve(const TridiagonalMatrix& m, std::span<const double> rhs) {
    m.validate();
    if (rhs.size() != m.size()) throw UsageError("thomas_solve: dimension mismatch");
    std::vector<double> x(rhs.begin(), rhs.end());
    TridiagonalSolver(m).solve_in_place(x);
    return x;
}

TridiagonalSolver::TridiagonalSolver(const TridiagonalMatrix& m) {
    m.validate();
    const std::size_t n = m.size();
    sub_ = m.sub;
    upper_.assign(n, 0.0);
    inv_pivot_.assign(n, 0.0);
    double prev_upper = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pivot = m.diag[i] - (i > 0 ? m.sub[i - 1] * prev_upper : 0.0);
        if (pivot == 0.0) throw UsageError("tridiagonal matrix is singular");
        inv_pivot_[i] = 1.0 / pivot;
        prev_upper = (i + 1 < n) ? m.super[i] * inv_pivot_[i] : 0.0;
        upper_[i] = prev_upper;
    }
}

void TridiagonalSolver::solve_in_place(std::span<double> x) const {
    const std::size_t n = inv_pivot_.size();
    if (x.size() != n) throw UsageError("tridiagonal solve: dimension mismatch");
    if (n == 0) return;
    x[0] *= inv_pivot_[0];
    for (std::size_t i = 1; i < n; ++i) {
        x[i] = (x[i] - sub_[i - 1] * x[i - 1]) * inv_pivot_[i];
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] -= upper_[i] * x[i + 1];
    }
}

}  // namespace stmg
