#pragma once

#include <functional>
#include <span>
#include <vector>

#include "stmg/core.hpp"

namespace stmg {

/// Dirichlet ends and zero data past t_{n_t} (and at t_0), or full wrap-around.
enum class Closure { Dirichlet, Periodic };

// Coarse node k sits on fine node 2k+1 (0-based) in both directions.

/// coarse_k = 1/4 f_{2k} + 1/2 f_{2k+1} + 1/4 f_{2k+2}
std::vector<double> restrict_space(std::span<const double> fine, Closure c = Closure::Dirichlet);
/// Linear interpolation; the assembled matrix is 2 * restrict_space^T.
std::vector<double> prolong_space(std::span<const double> coarse, Closure c = Closure::Dirichlet);

SpaceTimeField restrict_space(const SpaceTimeField& fine, Closure c = Closure::Dirichlet);
SpaceTimeField prolong_space(const SpaceTimeField& coarse, Closure c = Closure::Dirichlet);

/// Full weighting of whole time blocks, factor 2.
SpaceTimeField restrict_time_f2(const SpaceTimeField& fine, Closure c = Closure::Dirichlet);
SpaceTimeField prolong_time_f2(const SpaceTimeField& coarse, Closure c = Closure::Dirichlet);

/// Factor-2 space step (if mx == 2) followed by log2(mt) factor-2 time steps.
SpaceTimeField restrict_field(const SpaceTimeField& fine, int mt, int mx, Closure c = Closure::Dirichlet);
/// Reverse order of restrict_field.
SpaceTimeField prolong_field(const SpaceTimeField& coarse, int mt, int mx, Closure c = Closure::Dirichlet);

/// (4,2) composite: time f2 twice, space f2.
SpaceTimeField restrict_new(const SpaceTimeField& fine, Closure c = Closure::Dirichlet);
SpaceTimeField prolong_new(const SpaceTimeField& coarse, Closure c = Closure::Dirichlet);

/// Number of single-direction stencil passes used by restrict_field(.., mt, mx).
int transfer_stages(int mt, int mx);

struct TransferPair {
    int mt = 2;
    int mx = 2;
    Closure closure = Closure::Dirichlet;

    SpaceTimeField restrict_(const SpaceTimeField& fine) const { return restrict_field(fine, mt, mx, closure); }
    SpaceTimeField prolong(const SpaceTimeField& coarse) const { return prolong_field(coarse, mt, mx, closure); }
};

}  // namespace stmg
