#pragma once

#include <cstddef>
#include <functional>

namespace qll {

// Number of worker threads for per-node loops: hardware concurrency capped by
// the QLL_THREADS environment variable (or set_thread_cap()).
int thread_count();
void set_thread_cap(int cap);

// Runs body(i) for i in [0, n). Iterations must be independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qll
