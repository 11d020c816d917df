// Index-sharded parallel loop.  Writers own disjoint slots, so the result is
// independent of the schedule; QC_THREADS caps the worker count.
#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qc {

inline int worker_cap() {
  static int cap = [] {
    unsigned hw = std::thread::hardware_concurrency();
    int n = hw == 0 ? 1 : int(hw);
    if (const char* env = std::getenv("QC_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) n = std::min(n, v);
    }
    return std::min(n, 16);
  }();
  return cap;
}

template <typename Fn>
void parallel_for(size_t n, const Fn& fn) {
  size_t workers = size_t(worker_cap());
  if (workers <= 1 || n < 512) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  workers = std::min(workers, n);
  std::atomic<size_t> cursor{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  const size_t chunk = std::max<size_t>(64, n / (workers * 8));
  auto body = [&] {
    for (;;) {
      size_t start = cursor.fetch_add(chunk);
      if (start >= n || failed.load(std::memory_order_relaxed)) return;
      size_t stop = std::min(n, start + chunk);
      try {
        for (size_t i = start; i < stop; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace qc
