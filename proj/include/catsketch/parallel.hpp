// Copyright 2026 the catsketch authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace catsketch {

// Runs fn(i) for i in [begin, end) on up to `workers` threads, in contiguous
// blocks. Callers write into preallocated slots indexed by i, so the result
// never depends on the worker count. The first exception (from the
// lowest-numbered block) is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, unsigned workers,
                  Fn&& fn) {
  if (begin >= end) return;
  const std::size_t count = end - begin;
  if (workers <= 1 || count == 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  const std::size_t nthreads =
      std::min<std::size_t>(workers, count);
  const std::size_t chunk = (count + nthreads - 1) / nthreads;
  std::vector<std::exception_ptr> errors(nthreads);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    const std::size_t lo = begin + t * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, t, &fn, &errors] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace catsketch
