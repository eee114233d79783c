#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace dirspace {

// Worker count: hardware concurrency capped by DIRECTION_SPACE_THREADS.
inline unsigned workerCount() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DIRECTION_SPACE_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

// Splits [0, count) into contiguous chunks, runs `work(chunk, begin, end)`
// on a pool, and returns per-chunk results in chunk order. Callers combine
// the chunk results sequentially, which keeps reductions deterministic
// under any completion order.
template <typename R>
std::vector<R> parallelChunks(std::size_t count,
                              const std::function<R(std::size_t, std::size_t)>& work) {
  const unsigned workers = std::min<std::size_t>(workerCount(), std::max<std::size_t>(count, 1));
  if (count == 0) return {};
  if (workers <= 1 || count < 256) {
    std::vector<R> out;
    out.push_back(work(0, count));
    return out;
  }
  std::vector<R> results(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&, w, begin, end] { results[w] = work(begin, end); });
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace dirspace
