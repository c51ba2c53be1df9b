#pragma once

#include <cstddef>
#include <functional>

namespace czk {

// Worker count: CZCTL_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

// Runs body(begin, end) over contiguous chunks of [0, count). Each index is
// visited exactly once; results must not depend on the chunking.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace czk
