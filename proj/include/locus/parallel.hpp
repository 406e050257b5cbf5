// Index-parallel loop. Work item k always writes its own slot, so results do
// not depend on the number of workers.
#pragma once

#include <cstddef>
#include <functional>

namespace locus {

/// Worker count: LOCUS_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int worker_count();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace locus
