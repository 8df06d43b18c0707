#pragma once

#include <cstddef>
#include <functional>

namespace cvarough {

/// Number of workers for a request of `threads` (0 = hardware concurrency).
unsigned resolve_threads(unsigned threads);

/// Calls body(i) for i in [0, n) on up to `threads` workers. The first
/// exception thrown by a body is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace cvarough
