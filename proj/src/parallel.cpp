// Copyright (c) 2026 oscmult contributors
// SPDX-License-Identifier: Apache-2.0
#include "oscmult/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace oscmult {

unsigned thread_count() {
  if (const char* env = std::getenv("OSCMULT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1) throw std::runtime_error("OSCMULT_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

namespace {

// Chunk size depends only on n, never on the worker count.
std::size_t chunk_size(std::size_t n) {
  const std::size_t kChunk = 1u << 14;
  return std::min(n, kChunk);
}

template <class PerChunk>
void run_chunks(std::size_t n, PerChunk&& per_chunk) {
  if (n == 0) return;
  const std::size_t cs = chunk_size(n);
  const std::size_t nchunks = (n + cs - 1) / cs;
  const unsigned workers = std::min<std::size_t>(thread_count(), nchunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c)
      per_chunk(c, c * cs, std::min(n, (c + 1) * cs));
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= nchunks) return;
        per_chunk(c, c * cs, std::min(n, (c + 1) * cs));
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  run_chunks(n, [&](std::size_t, std::size_t b, std::size_t e) { fn(b, e); });
}

double parallel_reduce(std::size_t n, const std::function<double(std::size_t, std::size_t)>& fn) {
  if (n == 0) return 0.0;
  const std::size_t cs = chunk_size(n);
  const std::size_t nchunks = (n + cs - 1) / cs;
  std::vector<double> partial(nchunks, 0.0);
  run_chunks(n, [&](std::size_t c, std::size_t b, std::size_t e) { partial[c] = fn(b, e); });
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
}

}  // namespace oscmult
