#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace fedcarbon {

// Runs fn(0..count-1) on up to `threads` workers. Results must be written
// to per-index slots by the callers; the split is by contiguous blocks, so
// the outcome is identical for any thread count. The first exception thrown
// by a worker is rethrown after all workers join.
inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  if (threads < 1) threads = 1;
  if (threads == 1 || count == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = std::min(threads, count);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
  const int base = count / workers;
  const int extra = count % workers;
  int begin = 0;
  for (int w = 0; w < workers; ++w) {
    const int size = base + (w < extra ? 1 : 0);
    const int end = begin + size;
    pool.emplace_back([&, w, begin, end] {
      try {
        for (int i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[static_cast<size_t>(w)] = std::current_exception();
      }
    });
    begin = end;
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace fedcarbon
