#pragma once

#include <cstdint>
#include <functional>

namespace mcv2x {

// Worker count: MCV2X_THREADS if set (>=1), else hardware concurrency.
int thread_count();

// Runs fn(begin, end, chunk_index) over [0, n) split into fixed-size chunks.
// Chunk boundaries depend only on (n, chunk_size), never on the worker count,
// so per-chunk partial results can be merged in chunk order for bit-identical
// totals under any thread count. fn must only write state owned by its chunk.
void parallel_chunks(std::int64_t n, std::int64_t chunk_size,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn);

}  // namespace mcv2x
