#pragma once

#include <cstddef>
#include <functional>

namespace polya {

// Worker cap: POLYA_LAB_THREADS if set and positive, else hardware concurrency.
std::size_t thread_cap();

// Calls body(begin, end) on contiguous chunks of [0, n). Chunk boundaries
// depend only on n and the worker count, never on timing.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace polya
