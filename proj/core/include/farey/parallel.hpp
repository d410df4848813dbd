#ifndef FAREY_PARALLEL_HPP
#define FAREY_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace farey {

/// Number of worker threads for sweeps: hardware concurrency, capped by the
/// FAREY_SPECTRUM_THREADS environment variable when it holds a positive integer.
std::size_t worker_count();

/// Calls body(i) for i in [0, count) on up to worker_count() threads. Each
/// index is visited exactly once; the first exception thrown by a body is
/// rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace farey

#endif  // FAREY_PARALLEL_HPP
