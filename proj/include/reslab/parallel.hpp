#pragma once

#include <cstddef>
#include <functional>

namespace reslab {

// 0 resolves to std::thread::hardware_concurrency() (minimum 1).
unsigned resolve_thread_count(unsigned requested);

// Runs fn(i) for every i in [0, n). Work items must be independent and write
// only to caller-owned slots indexed by i, so results cannot depend on the
// worker count or on scheduling.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace reslab
