#pragma once

// Chunked parallel-for over an index range. Each index must write only its own
// outputs; chunks are contiguous so results never depend on the thread count.

#include <functional>

namespace qkerr {

// Runs fn(i) for i in [0, count). n_threads = 0 picks hardware concurrency;
// n_threads = 1 (or count < 2) runs inline.
void parallel_for(int count, int n_threads, const std::function<void(int)>& fn);

}  // namespace qkerr
