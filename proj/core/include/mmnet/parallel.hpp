#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace mmnet {

// Deterministic index-space parallel loop: body(i) for i in [0, n).
// Results must be written to per-index slots by the caller.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t workers = hw == 0 ? 1 : hw;
  if (workers > n) workers = n == 0 ? 1 : n;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace mmnet
