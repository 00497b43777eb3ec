#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fracpint {

namespace detail {
inline std::atomic<int>& thread_budget() {
  static std::atomic<int> budget{[] {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
  }()};
  return budget;
}
}  // namespace detail

// Global worker budget for data-parallel loops. A value of 1 runs every
// parallel_for inline on the calling thread.
inline void set_thread_count(int n) { detail::thread_budget().store(n < 1 ? 1 : n); }

inline int thread_count() { return detail::thread_budget().load(); }

// Runs body(i) for i in [0, n), split into contiguous per-worker ranges.
// Iterations must write to disjoint locations; the partition is deterministic,
// so results do not depend on the number of workers. The first exception
// thrown by any iteration is rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  std::size_t workers = static_cast<std::size_t>(thread_count());
  if (workers > n) workers = n;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::mutex err_mutex;
  std::exception_ptr err;
  auto run_range = [&](std::size_t w) {
    const std::size_t lo = n * w / workers;
    const std::size_t hi = n * (w + 1) / workers;
    try {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (!err) err = std::current_exception();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run_range, w);
  run_range(0);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace fracpint
