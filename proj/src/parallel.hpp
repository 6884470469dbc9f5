#pragma once
// Minimal block-parallel loop used by the all-pairs scans.  The worker count
// comes from AFFINA_THREADS (default: hardware concurrency); results must not
// depend on scheduling, so callers only use this for independent writes or
// monotone flags.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace affina {

inline unsigned thread_count() {
  if (const char* env = std::getenv("AFFINA_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(begin..end) split across threads. fn(lo, hi) handles [lo, hi).
inline void parallel_blocks(std::size_t begin, std::size_t end,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t total = end > begin ? end - begin : 0;
  const unsigned workers = thread_count();
  if (total == 0) return;
  if (workers <= 1 || total < 1024) {
    fn(begin, end);
    return;
  }
  const std::size_t chunk = (total + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = begin + w * chunk;
    if (lo >= end) break;
    std::size_t hi = std::min(end, lo + chunk);
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace affina
