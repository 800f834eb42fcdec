#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dirclust::detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [begin, end) into contiguous blocks and runs fn(lo, hi) on each,
/// one block per thread. The first exception thrown by a block is rethrown.
template <class Fn>
void parallel_blocks(std::size_t begin, std::size_t end, unsigned threads, Fn&& fn) {
  const std::size_t total = end > begin ? end - begin : 0;
  const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(total, 1));
  if (workers <= 1) {
    fn(begin, end);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t step = (total + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + std::min(total, w * step);
    const std::size_t hi = begin + std::min(total, (w + 1) * step);
    pool.emplace_back([&, w, lo, hi] {
      try {
        fn(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace dirclust::detail
