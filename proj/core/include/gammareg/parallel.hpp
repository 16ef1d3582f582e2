#pragma once

#include <cstddef>
#include <functional>

namespace gammareg {

// Resolves a requested worker count: 0 means hardware concurrency.
unsigned resolve_threads(unsigned requested) noexcept;

// Calls fn(i) for i in [0, count) on up to `threads` workers. Each index is
// visited exactly once; results must be written to per-index slots.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace gammareg
