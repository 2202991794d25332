#pragma once

#include <cstddef>
#include <functional>

namespace odg {

/// Number of worker threads used by parallel_for. Defaults to the hardware
/// count, capped at 8; override via ODG_THREADS.
int thread_count();

/// Runs fn(chunk_index, begin, end) over [0, n) split into fixed contiguous
/// chunks. Chunk boundaries depend only on n and the thread count, so callers
/// that merge per-chunk buffers in chunk order get reproducible results.
void parallel_for(std::size_t n, const std::function<void(int, std::size_t, std::size_t)>& fn);

/// Convenience wrapper for element-wise loops: fn(i).
void parallel_for_each(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace odg
