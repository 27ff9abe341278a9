#ifndef TDASUM_PARALLEL_HPP
#define TDASUM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace tdasum {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
/// handled exactly once and the caller's fn must only write to index-owned
/// slots, so results never depend on the thread count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

/// Resolves a thread-count request: 0 means "use the TDASUM_THREADS
/// environment variable, else 1".
int resolve_threads(int requested);

}  // namespace tdasum

#endif
