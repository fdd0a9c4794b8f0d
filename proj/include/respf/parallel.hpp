#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace respf {

/// Worker cap: RESPONSE_FORECAST_THREADS if set, else hardware concurrency.
inline int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("RESPONSE_FORECAST_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < hw) hw = cap;
    if (cap >= 1 && cap > hw) hw = cap;
  }
  return hw;
}

/// Runs body(i) for i in [0, n) across workers. Each index is independent
/// (replicates derive their own rng from the index), so scheduling cannot
/// change results; callers reduce over i in index order afterwards.
inline void parallel_for_index(long n, const std::function<void(long)>& body) {
  const int workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (long i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace respf
