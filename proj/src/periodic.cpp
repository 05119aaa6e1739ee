#include "stmg/heat.hpp"

namespace stmg {

bool PeriodicGrid::admits(int mt, int mx) const {
    if (mt != 1 && mt != 2 && mt != 4) return false;
    if (mx != 1 && mx != 2) return false;
    return n_t % static_cast<std::size_t>(mt) == 0 && n_x % static_cast<std::size_t>(mx) == 0 &&
           n_t / static_cast<std::size_t>(mt) >= 1 && n_x / static_cast<std::size_t>(mx) >= 1;
}

PeriodicGrid PeriodicGrid::coarsen(int mt, int mx) const {
    if (!admits(mt, mx)) throw UsageError("periodic grid does not admit this coarsening");
    return PeriodicGrid{n_x / static_cast<std::size_t>(mx), n_t / static_cast<std::size_t>(mt),
                        sigma * mt / static_cast<double>(mx * mx)};
}

namespace {

DenseMatrix<double> circulant_q(std::size_t n, double sigma) {
    DenseMatrix<double> q(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        q(j, j) += 1.0 + 2.0 * sigma;
        q(j, (j + n - 1) % n) -= sigma;
        q(j, (j + 1) % n) -= sigma;
    }
    return q;
}

PeriodicGrid checked(const PeriodicGrid& g) {
    if (g.n_x == 0 || g.n_t == 0) throw UsageError("periodic grid needs positive sizes");
    if (!(g.sigma > 0.0)) throw UsageError("periodic grid needs sigma > 0");
    return g;
}

}  // namespace

PeriodicHeatOperator::PeriodicHeatOperator(const PeriodicGrid& g)
    : grid_(checked(g)), q_lu_(circulant_q(g.n_x, g.sigma)) {}

SpaceTimeField PeriodicHeatOperator::apply(const SpaceTimeField& u) const {
    const std::size_t nx = grid_.n_x, nt = grid_.n_t;
    if (u.n_x() != nx || u.n_t() != nt) throw UsageError("field does not match periodic grid");
    const double s = grid_.sigma;
    SpaceTimeField out(nx, nt);
    for (std::size_t n = 0; n < nt; ++n) {
        const std::size_t prev = (n + nt - 1) % nt;
        for (std::size_t j = 0; j < nx; ++j) {
            out(n, j) = (1.0 + 2.0 * s) * u(n, j) - s * u(n, (j + nx - 1) % nx) - s * u(n, (j + 1) % nx) -
                        u(prev, j);
        }
    }
    return out;
}

void PeriodicHeatOperator::solve_block(std::span<double> x) const {
    auto y = q_lu_.solve(x);
    std::copy(y.begin(), y.end(), x.begin());
}

DenseMatrix<double> PeriodicHeatOperator::dense() const {
    const std::size_t nx = grid_.n_x, nt = grid_.n_t, big = nx * nt;
    DenseMatrix<double> m(big, big);
    SpaceTimeField e(nx, nt);
    for (std::size_t c = 0; c < big; ++c) {
        e.values()[c] = 1.0;
        const auto col = apply(e);
        for (std::size_t r = 0; r < big; ++r) m(r, c) = col.values()[r];
        e.values()[c] = 0.0;
    }
    return m;
}

SpaceTimeField PeriodicHeatOperator::pseudo_solve(const SpaceTimeField& rhs) const {
    const std::size_t big = grid_.size();
    if (rhs.size() != big) throw UsageError("field does not match periodic grid");
    const double shift = 1.0 / static_cast<double>(big);
    if (pinv_.empty()) {
        // L is normal with the constants as its only null vectors, so
        // (L + J/N)^{-1} - J/N is its Moore-Penrose inverse.
        auto m = dense();
        for (double& v : m.data()) v += shift;
        auto inv = inverse(m);
        for (double& v : inv.data()) v -= shift;
        pinv_.assign(inv.data().begin(), inv.data().end());
    }
    SpaceTimeField out(grid_.n_x, grid_.n_t);
    auto in = rhs.values();
    for (std::size_t r = 0; r < big; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < big; ++c) acc += pinv_[r * big + c] * in[c];
        out.values()[r] = acc;
    }
    return out;
}

PeriodicHeatOperator assemble_periodic_operator(const PeriodicGrid& g) { return PeriodicHeatOperator(g); }

PeriodicHeatOperator assemble_periodic_operator(const SpaceTimeGrid& g) {
    return PeriodicHeatOperator(PeriodicGrid{g.n_x(), g.n_t(), g.sigma()});
}

}  // namespace stmg
