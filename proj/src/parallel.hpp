#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace basisforge::detail {

inline unsigned worker_count(unsigned requested, std::uint64_t work) {
  if (requested <= 1 || work < 2) return 1;
  return static_cast<unsigned>(std::min<std::uint64_t>(requested, work));
}

// Runs fn(worker, begin, end) over contiguous chunks of [0, total).
// Chunk boundaries depend only on (workers, total), so callers that merge
// per-worker results in worker order get the same answer for any thread count
// as long as the merge is order-insensitive or worker-ordered.
template <typename Fn>
void parallel_chunks(unsigned workers, std::uint64_t total, Fn&& fn) {
  if (workers <= 1) {
    fn(0U, std::uint64_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min<std::uint64_t>(total, chunk * w);
    const std::uint64_t end = std::min<std::uint64_t>(total, begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      try {
        fn(w, begin, end);
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

}  // namespace basisforge::detail
