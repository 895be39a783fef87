#pragma once

#include <cstdint>
#include <functional>

namespace usynth {

// Runs fn(i) for i in [0, count) on up to `threads` workers. Work items are
// claimed through a shared atomic counter; with threads <= 1 everything runs
// inline. Callers own determinism: two invocations may interleave differently,
// so fn must write only to per-index state.
void ParallelFor(std::int64_t count, int threads, const std::function<void(std::int64_t)>& fn);

// Hardware concurrency with a floor of 1. threads == 0 in the API below means
// "use this".
int DefaultThreadCount();

}  // namespace usynth
