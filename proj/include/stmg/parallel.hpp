#pragma once

#include <cstddef>
#include <functional>

namespace stmg {

/// Worker count for kernel loops: STMG_THREADS if set and positive,
/// otherwise the hardware concurrency (STMG_THREADS=0 means auto).
std::size_t kernel_threads();

/// Runs body(i) for i in [begin, end), split into contiguous chunks across
/// kernel_threads() workers. Iterations must be independent.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace stmg
