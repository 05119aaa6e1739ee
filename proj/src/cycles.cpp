#include "stmg/cycles.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "stmg/lfa.hpp"

namespace stmg {

void CyclePlan::validate() const {
    if (strategy != CoarseningStrategy::New && strategy != CoarseningStrategy::Original) {
        throw UsageError("cycles support the 'new' and 'original' strategies only");
    }
    if (nu1 < 0 || nu2 < 0 || eta1 < 0 || eta2 < 0) throw UsageError("sweep counts must be nonnegative");
    if (depth < 0) throw UsageError("depth must be nonnegative");
    if (omega_mode == OmegaMode::Fixed && !(omega > 0.0 && omega <= 1.0)) {
        throw UsageError("damping must lie in (0, 1]");
    }
}

double resolve_omega(const CyclePlan& plan, double sigma) {
    plan.validate();
    switch (plan.omega_mode) {
        case OmegaMode::Fixed: return plan.omega;
        case OmegaMode::Theorem: return optimal_omega(plan.strategy, sigma);
        case OmegaMode::Numeric: {
            LfaConfig cfg;
            cfg.sigma = sigma;
            cfg.nu1 = plan.nu1;
            cfg.nu2 = plan.nu2;
            cfg.eta1 = plan.eta1;
            cfg.eta2 = plan.eta2;
            cfg.resolution = plan.lfa_resolution;
            return omega_opt_numeric(plan.strategy, cfg).omega;
        }
    }
    return plan.omega;
}

const Level& Level::coarse(int mt, int mx) const {
    auto& slot = coarse_[{mt, mx}];
    if (!slot) {
        slot = make_coarse(mt, mx);
        slot->cost = cost;
    }
    return *slot;
}

DirichletLevel::DirichletLevel(const SpaceTimeGrid& g) : op_(assemble_operator(g)) {}

SpaceTimeField DirichletLevel::apply(const SpaceTimeField& u) const { return apply_operator(op_, u); }

void DirichletLevel::smooth(SpaceTimeField& u, const SpaceTimeField& rhs, double omega, int sweeps) const {
    if (sweeps == 0) return;
    jacobi_sweep_in_place(op_, u, rhs, SmootherConfig{omega, sweeps});
    if (cost) cost->block_solves += static_cast<std::uint64_t>(sweeps) * n_t();
}

SpaceTimeField DirichletLevel::solve(const SpaceTimeField& rhs) const {
    if (cost) cost->block_solves += n_t();
    return direct_solve(op_, rhs);
}

SpaceTimeField DirichletLevel::restrict_(const SpaceTimeField& fine, int mt, int mx) const {
    if (cost) cost->transfer_passes += static_cast<std::uint64_t>(transfer_stages(mt, mx));
    return restrict_field(fine, mt, mx, Closure::Dirichlet);
}

SpaceTimeField DirichletLevel::prolong(const SpaceTimeField& coarse, int mt, int mx) const {
    if (cost) cost->transfer_passes += static_cast<std::uint64_t>(transfer_stages(mt, mx));
    return prolong_field(coarse, mt, mx, Closure::Dirichlet);
}

std::unique_ptr<Level> DirichletLevel::make_coarse(int mt, int mx) const {
    return std::make_unique<DirichletLevel>(coarsen_grid(op_.grid, mt, mx));
}

PeriodicLevel::PeriodicLevel(const PeriodicGrid& g) : op_(g) {}

void PeriodicLevel::smooth(SpaceTimeField& u, const SpaceTimeField& rhs, double omega, int sweeps) const {
    if (sweeps == 0) return;
    jacobi_sweep_in_place(op_, u, rhs, SmootherConfig{omega, sweeps});
    if (cost) cost->block_solves += static_cast<std::uint64_t>(sweeps) * n_t();
}

SpaceTimeField PeriodicLevel::solve(const SpaceTimeField& rhs) const {
    if (cost) cost->block_solves += n_t();
    return op_.pseudo_solve(rhs);
}

SpaceTimeField PeriodicLevel::restrict_(const SpaceTimeField& fine, int mt, int mx) const {
    if (cost) cost->transfer_passes += static_cast<std::uint64_t>(transfer_stages(mt, mx));
    return restrict_field(fine, mt, mx, Closure::Periodic);
}

SpaceTimeField PeriodicLevel::prolong(const SpaceTimeField& coarse, int mt, int mx) const {
    if (cost) cost->transfer_passes += static_cast<std::uint64_t>(transfer_stages(mt, mx));
    return prolong_field(coarse, mt, mx, Closure::Periodic);
}

std::unique_ptr<Level> PeriodicLevel::make_coarse(int mt, int mx) const {
    return std::make_unique<PeriodicLevel>(op_.grid().coarsen(mt, mx));
}

namespace {

bool small_enough(const Level& l) { return l.n_t() <= 4 || l.n_x() <= 3; }

bool original_admits(const Level& l) { return l.admits(2, 2) && l.coarse(2, 2).admits(2, 1); }

// Depth for a recursive cycle on `coarse`, or -1 for a direct solve.
int next_depth(const Level& coarse, int depth, bool can_recurse) {
    if (depth == 1 || !can_recurse) return -1;
    if (depth == 0) return small_enough(coarse) ? -1 : 0;
    return depth - 1;
}

void run(const Level& fine, SpaceTimeField& u, const SpaceTimeField& rhs, const CyclePlan& plan, double omega,
         int depth);

SpaceTimeField coarse_correction(const Level& coarse, const SpaceTimeField& rc, const CyclePlan& plan,
                                 double omega, int depth) {
    const bool can = plan.strategy == CoarseningStrategy::New ? coarse.admits(4, 2) : original_admits(coarse);
    const int d = next_depth(coarse, depth, can);
    if (d < 0) return coarse.solve(rc);
    SpaceTimeField ec = coarse.field();
    run(coarse, ec, rc, plan, omega, d);
    return ec;
}

SpaceTimeField fine_residual(const Level& l, const SpaceTimeField& u, const SpaceTimeField& rhs) {
    return rhs - l.apply(u);
}

void new_cycle(const Level& fine, SpaceTimeField& u, const SpaceTimeField& rhs, const CyclePlan& plan, double omega,
               int depth) {
    if (!fine.admits(4, 2)) throw UsageError("grid does not admit (4,2) coarsening");
    fine.smooth(u, rhs, omega, plan.nu1);
    // the rediscretized coarse operator carries a 4 tau step, hence the factor 4
    SpaceTimeField rc = fine.restrict_(fine_residual(fine, u, rhs), 4, 2);
    rc *= 4.0;
    const Level& coarse = fine.coarse(4, 2);
    u += fine.prolong(coarse_correction(coarse, rc, plan, omega, depth), 4, 2);
    fine.smooth(u, rhs, omega, plan.nu2);
}

void original_cycle(const Level& fine, SpaceTimeField& u, const SpaceTimeField& rhs, const CyclePlan& plan,
                    double omega, int depth) {
    if (!original_admits(fine)) throw UsageError("grid does not admit (2,2) then (2,1) coarsening");
    fine.smooth(u, rhs, omega, plan.nu1);
    SpaceTimeField rm = fine.restrict_(fine_residual(fine, u, rhs), 2, 2);
    rm *= 2.0;

    const Level& mid = fine.coarse(2, 2);
    SpaceTimeField em = mid.field();
    mid.smooth(em, rm, omega, plan.eta1);
    SpaceTimeField rc = mid.restrict_(fine_residual(mid, em, rm), 2, 1);
    rc *= 2.0;
    const Level& coarse = mid.coarse(2, 1);
    em += mid.prolong(coarse_correction(coarse, rc, plan, omega, depth), 2, 1);
    mid.smooth(em, rm, omega, plan.eta2);

    u += fine.prolong(em, 2, 2);
    fine.smooth(u, rhs, omega, plan.nu2);
}

void run(const Level& fine, SpaceTimeField& u, const SpaceTimeField& rhs, const CyclePlan& plan, double omega,
         int depth) {
    if (plan.strategy == CoarseningStrategy::New) {
        new_cycle(fine, u, rhs, plan, omega, depth);
    } else {
        original_cycle(fine, u, rhs, plan, omega, depth);
    }
}

void check_field(const Level& l, const SpaceTimeField& u, const SpaceTimeField& rhs) {
    if (u.n_x() != l.n_x() || u.n_t() != l.n_t() || !u.same_shape(rhs)) {
        throw UsageError("cycle: field does not match level");
    }
}

}  // namespace

void cycle_new(const Level& fine, SpaceTimeField& u, const SpaceTimeField& rhs, const CyclePlan& plan, double omega) {
    CyclePlan p = plan;
    p.strategy = CoarseningStrategy::New;
    p.validate();
    check_field(fine, u, rhs);
    new_cycle(fine, u, rhs, p, omega, p.depth);
}

void cycle_original(const Level& fine, SpaceTimeField& u, const SpaceTimeField& rhs, const CyclePlan& plan,
                    double omega) {
    CyclePlan p = plan;
    p.strategy = CoarseningStrategy::Original;
    p.validate();
    check_field(fine, u, rhs);
    original_cycle(fine, u, rhs, p, omega, p.depth);
}

void cycle(const Level& fine, SpaceTimeField& u, const SpaceTimeField& rhs, const CyclePlan& plan, double omega) {
    if (plan.strategy == CoarseningStrategy::New) {
        cycle_new(fine, u, rhs, plan, omega);
    } else {
        cycle_original(fine, u, rhs, plan, omega);
    }
}

SpaceTimeField cycle_new(const HeatOperator& op, SpaceTimeField u, const SpaceTimeField& rhs, const CyclePlan& plan) {
    DirichletLevel level(op.grid);
    CyclePlan p = plan;
    p.strategy = CoarseningStrategy::New;
    cycle_new(level, u, rhs, p, resolve_omega(p, op.grid.sigma()));
    return u;
}

SpaceTimeField cycle_original(const HeatOperator& op, SpaceTimeField u, const SpaceTimeField& rhs,
                              const CyclePlan& plan) {
    DirichletLevel level(op.grid);
    CyclePlan p = plan;
    p.strategy = CoarseningStrategy::Original;
    cycle_original(level, u, rhs, p, resolve_omega(p, op.grid.sigma()));
    return u;
}

SpaceTimeField random_field(std::size_t n_x, std::size_t n_t, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    SpaceTimeField f(n_x, n_t);
    for (double& v : f.values()) v = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return f;
}

SolveResult solve(const HeatOperator& op, const SpaceTimeField& rhs, const CyclePlan& plan, std::size_t max_iters,
                  double tol, std::uint64_t seed) {
    plan.validate();
    const SpaceTimeGrid& g = op.grid;
    const SpaceTimeField reference = direct_solve(op, rhs);

    CostCounter cost;
    DirichletLevel level(g);
    level.cost = &cost;

    SolveResult out;
    out.omega = resolve_omega(plan, g.sigma());
    out.solution = random_field(g.n_x(), g.n_t(), seed);

    double elapsed = 0.0;
    auto record = [&] {
        out.wall_time_s.push_back(elapsed);
        out.error_history.push_back(error_norm(out.solution, reference, g));
        out.residual_history.push_back(residual(op, out.solution, rhs).max_abs());
        out.cumulative_block_solves.push_back(cost.block_solves);
        out.cumulative_work.push_back(cost.total());
    };
    record();
    while (out.iterations < max_iters && !(out.error_history.back() <= tol)) {
        const auto t0 = std::chrono::steady_clock::now();
        cycle(level, out.solution, rhs, plan, out.omega);
        elapsed += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ++out.iterations;
        record();
    }
    return out;
}

}  // namespace stmg
