#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace qll {
namespace {

std::atomic<int> g_cap{0};

int env_cap() {
  const char* s = std::getenv("QLL_THREADS");
  if (s == nullptr) return 0;
  const int v = std::atoi(s);
  return v > 0 ? v : 0;
}

}  // namespace

void set_thread_cap(int cap) { g_cap.store(cap > 0 ? cap : 0); }

int thread_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  int cap = g_cap.load();
  if (cap == 0) cap = env_cap();
  return cap > 0 ? std::min(hw, cap) : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(thread_count());
  if (workers <= 1 || n < 256) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::atomic<bool> failed{false};
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (std::size_t i = lo; i < hi && !failed.load(); ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
        failed.store(true);
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace qll
