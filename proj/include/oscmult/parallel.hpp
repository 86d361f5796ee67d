// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace oscmult {

// Worker count: OSCMULT_THREADS if set, else hardware concurrency, min 1.
unsigned thread_count();

// Runs fn(begin, end) over disjoint chunks of [0, n). Chunking is fixed by n
// alone so per-chunk results are identical for any worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

// Deterministic parallel reduction: sums fn(begin, end) over the same fixed
// chunks in chunk order, independent of how chunks were scheduled.
double parallel_reduce(std::size_t n, const std::function<double(std::size_t, std::size_t)>& fn);

}  // namespace oscmult
