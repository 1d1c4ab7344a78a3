#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ifslab {

/// Worker count used by the internally parallel routines (default: the
/// hardware concurrency; 0 restores it). Results never depend on this value:
/// work is split into contiguous chunks whose outputs land in fixed slots.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(begin, end, chunk) over a partition of [0, n) into contiguous
/// chunks. The first exception thrown by any chunk (lowest chunk index) is
/// rethrown after all workers join.
template <typename Body>
void parallel_chunks(std::size_t n, Body&& body, std::size_t min_chunk = 4096) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(thread_count(), (n + min_chunk - 1) / min_chunk));
  if (workers <= 1) {
    body(std::size_t{0}, n, std::size_t{0});
    return;
  }
  const std::size_t step = (n + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = w * step;
    const std::size_t e = std::min(n, b + step);
    pool.emplace_back([&, b, e, w] {
      try {
        if (b < e) body(b, e, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

/// Number of chunks parallel_chunks will use for n items.
inline std::size_t chunk_count(std::size_t n, std::size_t min_chunk = 4096) {
  return std::max<std::size_t>(1, std::min<std::size_t>(thread_count(), (n + min_chunk - 1) / min_chunk));
}

}  // namespace ifslab
