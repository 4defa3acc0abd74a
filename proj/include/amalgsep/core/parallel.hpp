#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace amalgsep {

  // Worker cap: AMALGSEP_THREADS if set to a positive integer, otherwise the
  // hardware concurrency.
  inline std::size_t worker_threads() {
    if (char const* env = std::getenv("AMALGSEP_THREADS")) {
      try {
        long v = std::stol(env);
        if (v > 0) {
          return static_cast<std::size_t>(v);
        }
      } catch (...) {
      }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }

  // Smallest index i in [0, n) with pred(i) true. Work is dispatched in waves
  // of `worker_threads()` indices so the answer never depends on scheduling.
  template <typename Pred>
  std::optional<std::size_t> parallel_find_first(std::size_t n, Pred&& pred) {
    std::size_t const threads = std::min(worker_threads(), n);
    if (threads <= 1) {
      for (std::size_t i = 0; i < n; ++i) {
        if (pred(i)) {
          return i;
        }
      }
      return std::nullopt;
    }
    for (std::size_t start = 0; start < n; start += threads) {
      std::size_t const stop = std::min(n, start + threads);
      std::vector<char> hits(stop - start, 0);
      std::vector<std::thread> pool;
      for (std::size_t i = start; i < stop; ++i) {
        pool.emplace_back([&, i] { hits[i - start] = pred(i) ? 1 : 0; });
      }
      for (auto& t : pool) {
        t.join();
      }
      for (std::size_t i = start; i < stop; ++i) {
        if (hits[i - start]) {
          return i;
        }
      }
    }
    return std::nullopt;
  }

  // Applies fn(i) for every i in [0, n); results land in index order.
  template <typename T, typename Fn>
  std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
    std::vector<T>    out(n);
    std::size_t const threads = std::min(worker_threads(), n);
    if (threads <= 1) {
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = fn(i);
      }
      return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          out[i] = fn(i);
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
    return out;
  }

}  // namespace amalgsep
