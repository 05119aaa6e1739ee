#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "stmg/heat.hpp"
#include "stmg/smoother.hpp"
#include "stmg/strategy.hpp"
#include "stmg/transfer.hpp"

namespace stmg {

/// Work counters: raw block solves and single-direction transfer passes.
struct CostCounter {
    std::uint64_t block_solves = 0;
    std::uint64_t transfer_passes = 0;

    std::uint64_t total() const { return block_solves + transfer_passes; }
};

enum class OmegaMode { Fixed, Theorem, Numeric };

struct CyclePlan {
    CoarseningStrategy strategy = CoarseningStrategy::New;
    int nu1 = 3;
    int nu2 = 3;
    int eta1 = 3;  // intermediate level, original strategy only
    int eta2 = 3;
    OmegaMode omega_mode = OmegaMode::Fixed;
    double omega = 0.5;
    /**
     * Coarse-solve recursion depth. 1 is the basic two-level (new) or
     * three-level (original) cycle with a direct coarsest solve; d > 1 replaces
     * that solve by one cycle of depth d-1 from a zero guess; 0 recurses until
     * n_t <= 4, n_x <= 3 or the grid no longer coarsens.
     */
    int depth = 0;
    std::size_t lfa_resolution = 128;  // used by OmegaMode::Numeric

    void validate() const;
};

/// Damping actually used by a plan at the given fine-grid sigma.
double resolve_omega(const CyclePlan& plan, double sigma);

/**
 * One grid of a hierarchy. Implemented for the Dirichlet solver and the
 * periodic validation operator so both share the cycle code.
 */
class Level {
public:
    virtual ~Level() = default;

    virtual std::size_t n_x() const = 0;
    virtual std::size_t n_t() const = 0;
    virtual SpaceTimeField apply(const SpaceTimeField& u) const = 0;
    virtual void smooth(SpaceTimeField& u, const SpaceTimeField& rhs, double omega, int sweeps) const = 0;
    /// Exact (or pseudo-inverse) solve on this level.
    virtual SpaceTimeField solve(const SpaceTimeField& rhs) const = 0;
    virtual bool admits(int mt, int mx) const = 0;
    virtual SpaceTimeField restrict_(const SpaceTimeField& fine, int mt, int mx) const = 0;
    virtual SpaceTimeField prolong(const SpaceTimeField& coarse, int mt, int mx) const = 0;

    /// Rediscretized coarse level, built on first use and cached.
    const Level& coarse(int mt, int mx) const;

    SpaceTimeField field() const { return SpaceTimeField(n_x(), n_t()); }

    CostCounter* cost = nullptr;  // shared by the whole hierarchy

protected:
    virtual std::unique_ptr<Level> make_coarse(int mt, int mx) const = 0;

private:
    mutable std::map<std::pair<int, int>, std::unique_ptr<Level>> coarse_;
};

class DirichletLevel final : public Level {
public:
    explicit DirichletLevel(const SpaceTimeGrid& g);

    const HeatOperator& op() const { return op_; }

    std::size_t n_x() const override { return op_.grid.n_x(); }
    std::size_t n_t() const override { return op_.grid.n_t(); }
    SpaceTimeField apply(const SpaceTimeField& u) const override;
    void smooth(SpaceTimeField& u, const SpaceTimeField& rhs, double omega, int sweeps) const override;
    SpaceTimeField solve(const SpaceTimeField& rhs) const override;
    bool admits(int mt, int mx) const override { return op_.grid.admits(mt, mx); }
    SpaceTimeField restrict_(const SpaceTimeField& fine, int mt, int mx) const override;
    SpaceTimeField prolong(const SpaceTimeField& coarse, int mt, int mx) const override;

protected:
    std::unique_ptr<Level> make_coarse(int mt, int mx) const override;

private:
    HeatOperator op_;
};

class PeriodicLevel final : public Level {
public:
    explicit PeriodicLevel(const PeriodicGrid& g);

    const PeriodicHeatOperator& op() const { return op_; }

    std::size_t n_x() const override { return op_.grid().n_x; }
    std::size_t n_t() const override { return op_.grid().n_t; }
    SpaceTimeField apply(const SpaceTimeField& u) const override { return op_.apply(u); }
    void smooth(SpaceTimeField& u, const SpaceTimeField& rhs, double omega, int sweeps) const override;
    SpaceTimeField solve(const SpaceTimeField& rhs) const override;
    bool admits(int mt, int mx) const override { return op_.grid().admits(mt, mx); }
    SpaceTimeField restrict_(const SpaceTimeField& fine, int mt, int mx) const override;
    SpaceTimeField prolong(const SpaceTimeField& coarse, int mt, int mx) const override;

protected:
    std::unique_ptr<Level> make_coarse(int mt, int mx) const override;

private:
    PeriodicHeatOperator op_;
};

/// One (4,2) cycle; u is updated in place.
void cycle_new(const Level& fine, SpaceTimeField& u, const SpaceTimeField& rhs, const CyclePlan& plan, double omega);
/// One three-level (2,2)+(2,1) cycle; u is updated in place.
void cycle_original(const Level& fine, SpaceTimeField& u, const SpaceTimeField& rhs, const CyclePlan& plan,
                    double omega);
/// Dispatches on plan.strategy (New or Original).
void cycle(const Level& fine, SpaceTimeField& u, const SpaceTimeField& rhs, const CyclePlan& plan, double omega);

/// Convenience overloads on the Dirichlet operator with omega from the plan.
SpaceTimeField cycle_new(const HeatOperator& op, SpaceTimeField u, const SpaceTimeField& rhs, const CyclePlan& plan);
SpaceTimeField cycle_original(const HeatOperator& op, SpaceTimeField u, const SpaceTimeField& rhs,
                              const CyclePlan& plan);

struct SolveResult {
    SpaceTimeField solution;
    std::vector<double> error_history;     // entry 0 is the initial guess
    std::vector<double> residual_history;  // max-norm of rhs - L u
    std::vector<std::uint64_t> cumulative_block_solves;
    std::vector<std::uint64_t> cumulative_work;  // block solves + transfer passes
    std::vector<double> wall_time_s;             // cumulative cycle time
    double omega = 0.0;
    std::size_t iterations = 0;
};

/// Uniform [0,1) field from a 64-bit Mersenne twister.
SpaceTimeField random_field(std::size_t n_x, std::size_t n_t, std::uint64_t seed);

/**
 * Iterates the plan's cycle from a seeded random guess until the error
 * against the direct solution drops to tol or max_iters is reached.
 */
SolveResult solve(const HeatOperator& op, const SpaceTimeField& rhs, const CyclePlan& plan, std::size_t max_iters,
                  double tol, std::uint64_t seed);

}  // namespace stmg
