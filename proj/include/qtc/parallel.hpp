#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include <Eigen/Core>

namespace qtc {

//! Worker cap: QUATCOMP_THREADS if set (>=1), otherwise hardware concurrency.
inline int max_threads() {
  if (const char* env = std::getenv("QUATCOMP_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

//! Run fn(i) for i in [0, n). Iterations must be independent; each writes only
//! its own outputs, so the result does not depend on the schedule.
template <typename Fn>
void parallel_for(Eigen::Index n, Fn&& fn) {
  const int workers = std::min<Eigen::Index>(max_threads(), n);
  if (workers <= 1) {
    for (Eigen::Index i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < workers; ++t) {
    const Eigen::Index lo = n * t / workers;
    const Eigen::Index hi = n * (t + 1) / workers;
    pool.emplace_back([&, lo, hi] {
      try {
        for (Eigen::Index i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace qtc
