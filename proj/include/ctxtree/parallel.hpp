#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ctxtree {

/// Splits [0, n) into `threads` contiguous chunks and runs body(begin, end)
/// on each. Chunk boundaries depend only on n and threads, so any reduction
/// done per chunk in index order is deterministic. The first exception
/// thrown by a worker is rethrown.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2 * threads) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = n * t / threads;
      const std::size_t end = n * (t + 1) / threads;
      workers.emplace_back([&, t, begin, end] {
        try {
          body(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace ctxtree
