#include "estcomb/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace estcomb {

int parallel_workers() {
  if (const char* env = std::getenv("ESTCOMBINE_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
      // fall through to hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_blocks(std::int64_t n, int workers,
                     const std::function<void(std::int64_t, std::int64_t, int)>& body) {
  if (n <= 0) return;
  workers = std::max(1, workers);
  const std::int64_t blocks = std::min<std::int64_t>(workers, n);
  if (blocks == 1) {
    body(0, n, 0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(blocks));
  const std::int64_t chunk = (n + blocks - 1) / blocks;
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::int64_t begin = b * chunk;
    const std::int64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&body, begin, end, b] { body(begin, end, static_cast<int>(b)); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace estcomb
