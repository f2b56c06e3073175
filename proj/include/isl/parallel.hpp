#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace isl {

/// Worker count: ISL_THREADS if set (>= 1), else hardware concurrency.
int worker_count();

/// Runs f(i) for i in [0, n) on up to worker_count() threads, in contiguous blocks.
/// Each index is computed by exactly one worker, so results written per index are deterministic.
/// The first exception thrown by any worker is rethrown.
template <class F>
void parallel_for(int n, F&& f) {
  const int w = std::min(worker_count(), std::max(n, 1));
  if (w <= 1 || n < 2) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(w));
  for (int t = 0; t < w; ++t) {
    const int lo = static_cast<int>(static_cast<long long>(n) * t / w);
    const int hi = static_cast<int>(static_cast<long long>(n) * (t + 1) / w);
    pool.emplace_back([&, lo, hi] {
      try {
        for (int i = lo; i < hi; ++i) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

/// Pairwise (tree) summation, independent of thread count.
double pairwise_sum(const double* v, size_t n);

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace isl
