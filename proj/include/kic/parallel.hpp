#pragma once

#include <cstdint>
#include <functional>

namespace kic {

// Worker count: KIC_JOBS env var if set, else `requested` if > 0, else
// hardware concurrency.
int resolve_jobs(int requested = 0);

// Splits [0, total) into contiguous chunks and runs fn(worker, begin, end)
// on `jobs` threads. fn must not share mutable state across workers.
void parallel_chunks(std::uint64_t total, int jobs,
                     const std::function<void(int, std::uint64_t, std::uint64_t)>& fn);

}  // namespace kic
