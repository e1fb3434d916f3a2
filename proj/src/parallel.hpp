#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rocsbb {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(begin, end, block_index) over fixed-size blocks of [0, n).
// The block decomposition depends only on n and block_size, never on the
// thread count, so per-block results can be merged in block order to give
// output that is identical for any parallelism degree.
template <typename Fn>
void for_each_block(std::size_t n, std::size_t block_size, int threads, Fn&& fn) {
  if (n == 0) return;
  const std::size_t n_blocks = (n + block_size - 1) / block_size;
  const int n_threads = resolve_threads(threads);

  if (n_threads <= 1 || n_blocks <= 1) {
    for (std::size_t blk = 0; blk < n_blocks; ++blk) {
      const std::size_t begin = blk * block_size;
      const std::size_t end = std::min(n, begin + block_size);
      fn(begin, end, blk);
    }
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t blk = next.fetch_add(1);
      if (blk >= n_blocks) return;
      const std::size_t begin = blk * block_size;
      const std::size_t end = std::min(n, begin + block_size);
      try {
        fn(begin, end, blk);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::jthread> pool;
  const std::size_t spawn = std::min(static_cast<std::size_t>(n_threads), n_blocks);
  pool.reserve(spawn);
  for (std::size_t t = 0; t < spawn; ++t) pool.emplace_back(worker);
  pool.clear();  // join

  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rocsbb
