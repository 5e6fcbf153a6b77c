#pragma once

#include <functional>

namespace varsel {

// Runs fn(i) for i in [0, n_items) on up to `threads` worker threads.
// Callers that need determinism must write into preallocated per-item slots
// and reduce sequentially afterwards; this function guarantees nothing about
// execution order.
void parallel_for(int n_items, int threads, const std::function<void(int)>& fn);

}  // namespace varsel
