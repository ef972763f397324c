#ifndef HURWITZ_DETAIL_PARALLEL_HPP
#define HURWITZ_DETAIL_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hurwitz::detail {

// Runs body(0..count-1) on up to `threads` workers. The first exception
// stops the remaining work and is rethrown on the calling thread.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < std::min<std::size_t>(threads, count); ++k)
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}


}  // namespace hurwitz::detail

#endif  // HURWITZ_DETAIL_PARALLEL_HPP
