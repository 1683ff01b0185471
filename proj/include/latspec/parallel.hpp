#pragma once

#include <cstddef>
#include <functional>

namespace latspec {

// Worker count: LATSPEC_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

// Runs body(i) for i in [0, count). Each index is visited exactly once; the
// body must only write to storage owned by its index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace latspec
