#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace becthermo::detail {

// Runs fn(0..count-1) across hardware threads. Callers write results into
// index-addressed slots, so output never depends on scheduling order. The
// first exception thrown by any worker is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned nthreads =
      static_cast<unsigned>(std::min<std::size_t>(count, hw));
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(nthreads - 1);
  for (unsigned i = 0; i + 1 < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace becthermo::detail
