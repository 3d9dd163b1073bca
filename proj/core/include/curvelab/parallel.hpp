#pragma once

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace curvelab {

inline unsigned effective_workers(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Static block split of [0, n) over `workers` threads (0 = hardware count).
/// Bodies must be independent; results may not depend on execution order.
inline void parallel_for(std::size_t n, unsigned workers,
                         const std::function<void(std::size_t)>& body) {
  unsigned k = effective_workers(workers);
  if (k <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  if (static_cast<std::size_t>(k) > n) k = static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  std::exception_ptr first_error = nullptr;
  std::mutex error_mutex;
  for (unsigned t = 0; t < k; ++t) {
    std::size_t lo = n * t / k;
    std::size_t hi = n * (t + 1) / k;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace curvelab
