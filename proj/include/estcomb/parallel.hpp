#pragma once

#include <cstdint>
#include <functional>

namespace estcomb {

// Worker count: ESTCOMBINE_THREADS if set and positive, else hardware
// concurrency, never less than 1.
int parallel_workers();

// Splits [0, n) into at most `workers` contiguous blocks and runs
// body(begin, end, block_index) concurrently. Callers that want results
// independent of the worker count must write into per-index or per-block
// slots and reduce in block order afterwards.
void parallel_blocks(std::int64_t n, int workers,
                     const std::function<void(std::int64_t, std::int64_t, int)>& body);

inline void parallel_blocks(std::int64_t n,
                            const std::function<void(std::int64_t, std::int64_t, int)>& body) {
  parallel_blocks(n, parallel_workers(), body);
}

}  // namespace estcomb
