#ifndef CHOQUARD_PARALLEL_HPP
#define CHOQUARD_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace choquard {

// Worker count: hardware concurrency, capped by the CHOQUARD_THREADS
// environment variable when set.
unsigned worker_count();

// Runs fn(i) for i in [0, n) on contiguous chunks across workers. Each
// index is processed exactly once; use only with independent iterations.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace choquard

#endif
