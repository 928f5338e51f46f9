#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace binatoms {

inline unsigned default_thread_count() {
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(i) for every i in [0, count) on up to `threads` workers.
///
/// Work is handed out by index, so callers that write into slot i of a
/// pre-sized vector get results independent of the thread count. The
/// exception from the lowest failing index is rethrown.
template <class Body>
void parallel_for(std::int64_t count, unsigned threads, Body&& body) {
  if (count <= 0) return;
  threads = static_cast<unsigned>(std::clamp<std::int64_t>(threads, 1, count));
  if (threads == 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  auto worker = [&] {
    for (std::int64_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace binatoms
