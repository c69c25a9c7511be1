#pragma once

#include <cstddef>
#include <functional>

namespace hforge {

/// Worker cap: hardware concurrency, lowered by HOMOTOPY_FORGE_THREADS when
/// that variable holds a positive integer.
std::size_t thread_cap();

/// Runs body(i) for i in [0, n). Indices are handed out dynamically; the first
/// exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hforge
