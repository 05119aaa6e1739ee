#include "stmg/smoother.hpp"

#include <cmath>

#include "stmg/parallel.hpp"

namespace stmg {

void SmootherConfig::validate() const {
    if (!(omega > 0.0 && omega <= 1.0)) throw UsageError("damping must lie in (0, 1]");
    if (sweeps < 0) throw UsageError("sweep count must be nonnegative");
}

void jacobi_sweep_in_place(const HeatOperator& op, SpaceTimeField& u, const SpaceTimeField& rhs,
                           const SmootherConfig& cfg) {
    cfg.validate();
    for (int s = 0; s < cfg.sweeps; ++s) {
        SpaceTimeField r = residual(op, u, rhs);
        parallel_for(0, u.n_t(), [&](std::size_t n) {
            auto d = r.block(n);
            op.q_solver.solve_in_place(d);
            auto un = u.block(n);
            for (std::size_t j = 0; j < un.size(); ++j) un[j] += cfg.omega * d[j];
        });
    }
}

SpaceTimeField jacobi_sweep(const HeatOperator& op, SpaceTimeField u, const SpaceTimeField& rhs,
                            const SmootherConfig& cfg) {
    jacobi_sweep_in_place(op, u, rhs, cfg);
    return u;
}

void jacobi_sweep_in_place(const PeriodicHeatOperator& op, SpaceTimeField& u, const SpaceTimeField& rhs,
                           const SmootherConfig& cfg) {
    cfg.validate();
    for (int s = 0; s < cfg.sweeps; ++s) {
        SpaceTimeField r = rhs - op.apply(u);
        for (std::size_t n = 0; n < u.n_t(); ++n) {
            auto d = r.block(n);
            op.solve_block(d);
            auto un = u.block(n);
            for (std::size_t j = 0; j < un.size(); ++j) un[j] += cfg.omega * d[j];
        }
    }
}

double smoother_error_matrix_radius(double omega) {
    if (!(omega > 0.0 && omega < 2.0)) throw UsageError("damping must lie in (0, 2)");
    return std::abs(1.0 - omega);
}

double full_threshold() { return 1.0 / std::sqrt(2.0); }

double new_threshold() {
    const double r2 = std::sqrt(2.0);
    return (r2 - 2.0 + std::sqrt(2.0 - r2)) / 2.0;
}

double full_branch(double c) { return 2.0 * c / (c * c + 2.0 * c - 1.0); }

double new_branch(double c) {
    const double r2 = std::sqrt(2.0);
    return (r2 * c * c - 2.0 * c) / ((r2 - 1.0) * c * c - 2.0 * c + 1.0);
}

double optimal_omega(CoarseningStrategy strategy, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw UsageError("sigma must be positive");
    const double c = 1.0 + 2.0 * sigma;
    switch (strategy) {
        case CoarseningStrategy::TimeSemi2:
        case CoarseningStrategy::TimeSemi4: return 0.5;
        case CoarseningStrategy::SpaceSemi: return 1.0;
        case CoarseningStrategy::Full:
        case CoarseningStrategy::Original: return sigma > full_threshold() ? 0.5 : full_branch(c);
        case CoarseningStrategy::New: return sigma > new_threshold() ? 0.5 : new_branch(c);
    }
    return 0.5;
}

}  // namespace stmg
