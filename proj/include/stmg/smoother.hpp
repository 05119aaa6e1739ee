#pragma once

#include "stmg/heat.hpp"
#include "stmg/strategy.hpp"

namespace stmg {

struct SmootherConfig {
    double omega = 0.5;  // in (0, 1]
    int sweeps = 1;

    void validate() const;
};

/// cfg.sweeps steps of u <- u + omega D^{-1}(rhs - L u), D = blockdiag(Q).
SpaceTimeField jacobi_sweep(const HeatOperator& op, SpaceTimeField u, const SpaceTimeField& rhs,
                            const SmootherConfig& cfg);
/// In-place variant used by the cycles.
void jacobi_sweep_in_place(const HeatOperator& op, SpaceTimeField& u, const SpaceTimeField& rhs,
                           const SmootherConfig& cfg);

/// Same iteration on the periodic validation operator.
void jacobi_sweep_in_place(const PeriodicHeatOperator& op, SpaceTimeField& u, const SpaceTimeField& rhs,
                           const SmootherConfig& cfg);

/// |1 - omega|: the smoother is 1 - omega times identity plus a nilpotent part.
double smoother_error_matrix_radius(double omega);

/**
 * Damping that minimizes the smoothing factor, c = 1 + 2 sigma. Original
 * uses the value of its first (full) coarsening step.
 */
double optimal_omega(CoarseningStrategy strategy, double sigma);

/// sigma above which the full-coarsening optimum is 1/2.
double full_threshold();
/// sigma above which the (4,2)-coarsening optimum is 1/2 (about 0.08979).
double new_threshold();

/// Branch formulas, exposed for continuity checks.
double full_branch(double c);
double new_branch(double c);

}  // namespace stmg
