#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace graphseg {

inline int default_workers() noexcept {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Half-open [begin, end) slice `chunk` of `count` items split into `chunks` near-equal parts.
struct Slice {
  std::size_t begin;
  std::size_t end;
};
inline Slice slice_of(std::size_t count, std::size_t chunks, std::size_t chunk) noexcept {
  const std::size_t base = count / chunks;
  const std::size_t extra = count % chunks;
  const std::size_t begin = chunk * base + std::min(chunk, extra);
  return {begin, begin + base + (chunk < extra ? 1 : 0)};
}

/// Runs fn(chunk_index) for chunk_index in [0, chunks) on up to `workers` threads.
/// The first exception thrown by any chunk is rethrown on the calling thread.
template <typename Fn>
void parallel_chunks(std::size_t chunks, int workers, Fn&& fn) {
  if (chunks == 0) return;
  const std::size_t threads = std::min<std::size_t>(chunks, static_cast<std::size_t>(std::max(1, workers)));
  if (threads == 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads - 1);
    auto body = [&](std::size_t t) {
      try {
        for (std::size_t c = t; c < chunks; c += threads) fn(c);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    };
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(body, t);
    body(0);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace graphseg
