#pragma once

#include <string>
#include <string_view>

namespace stmg {

/**
 * Coarsening choices. TimeSemi2/TimeSemi4/SpaceSemi/Full/New describe a
 * single coarsening step (smoothing analysis). Original names the
 * three-level cycle built from one Full step followed by a (2,1) step.
 */
enum class CoarseningStrategy { TimeSemi2, TimeSemi4, SpaceSemi, Full, New, Original };

/// Accepts time-semi-2, time-semi-4, space-semi, full, new, original.
CoarseningStrategy parse_strategy(std::string_view name);
std::string to_string(CoarseningStrategy s);

/// Time and space factors of the first coarsening step.
int time_factor(CoarseningStrategy s);
int space_factor(CoarseningStrategy s);

}  // namespace stmg
