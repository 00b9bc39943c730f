#ifndef MWCUT_UTIL_HPP_
#define MWCUT_UTIL_HPP_

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace mwcut {

/// Shortest round-trip decimal form; keeps file output byte-stable.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Worker count: MWC_THREADS when set, hardware concurrency otherwise.
inline int worker_count() {
  if (const char* env = std::getenv("MWC_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, n) across worker threads. Work items must write
/// only to their own slot so results do not depend on the thread count.
inline void parallel_for(long n, const std::function<void(long)>& fn) {
  int workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  auto drain = [&]() {
    for (;;) {
      long i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (auto& t : pool) t.join();
}

}  // namespace mwcut

#endif  // MWCUT_UTIL_HPP_
