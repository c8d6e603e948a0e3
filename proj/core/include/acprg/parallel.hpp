#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace acprg {

/// Worker count from ACPRG_WORKERS, falling back to hardware concurrency.
std::size_t worker_count();

/// Splits [0, total) into contiguous chunks and calls fn(chunk, begin, end) on each,
/// one thread per chunk. Chunk boundaries depend only on (total, workers), so results
/// merged per chunk in chunk order are reproducible. Rethrows the first exception.
template <class Fn>
void parallel_chunks(std::size_t total, Fn&& fn, std::size_t workers = worker_count()) {
  workers = std::max<std::size_t>(1, std::min(workers, total));
  if (workers == 1) {
    fn(std::size_t{0}, std::size_t{0}, total);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t c = 0; c < workers; ++c) {
      const std::size_t begin = total * c / workers, end = total * (c + 1) / workers;
      threads.emplace_back([&, c, begin, end] {
        try {
          fn(c, begin, end);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace acprg
