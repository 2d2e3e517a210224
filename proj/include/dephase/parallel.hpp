#pragma once

#include <cstddef>
#include <functional>

namespace dephase {

// Runs body(i) for every i in [0, n) on `threads` workers (0 = hardware
// concurrency). Work is claimed through an atomic counter, so results must be
// written to index i by the body itself; that keeps assembly order (and hence
// output) independent of the thread count. If any call throws, remaining work
// is abandoned and the exception from the lowest failing index is rethrown on
// the calling thread.
void parallel_for_indexed(std::size_t n, int threads,
                          const std::function<void(std::size_t)>& body);

}  // namespace dephase
