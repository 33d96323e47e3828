#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace simjoin {

/// Runs f(i) for i in [0, count) on up to `jobs` threads; rethrows the
/// first exception after all workers stop.
template <class F>
void parallel_for(std::uint64_t count, unsigned jobs, F&& f) {
  jobs = std::max(1u, jobs);
  if (jobs == 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  const auto n = static_cast<unsigned>(std::min<std::uint64_t>(jobs, count));
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace simjoin
