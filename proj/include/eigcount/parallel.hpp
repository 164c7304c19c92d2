#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace eigcount {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, total) into fixed blocks of `block_size` and calls
/// fn(block_index, begin, end) for each, on up to `threads` workers.
/// Block boundaries do not depend on the worker count; callers that store
/// per-block results and merge them in block order get identical output for
/// any thread count. The first exception thrown by `fn` is rethrown.
template <class BlockFn>
void for_each_block(std::uint64_t total, std::uint64_t block_size, unsigned threads,
                    BlockFn&& fn) {
  if (total == 0) return;
  const std::uint64_t blocks = (total + block_size - 1) / block_size;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), blocks));

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        const std::uint64_t begin = b * block_size;
        fn(b, begin, std::min(total, begin + block_size));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace eigcount
