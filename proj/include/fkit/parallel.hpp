#pragma once

// Chunked scans over a fixed index range. Results land in per-chunk slots so
// merging in chunk order is independent of the worker count.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fkit {

/// FKIT_WORKERS if set and positive, else 1.
inline int default_workers() {
  if (const char* env = std::getenv("FKIT_WORKERS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  return 1;
}

template <class R, class F>
std::vector<R> run_chunks(std::size_t chunks, int workers, F&& fn) {
  std::vector<R> out(chunks);
  if (workers <= 1 || chunks <= 1) {
    for (std::size_t i = 0; i < chunks; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mu;
  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= chunks || failed) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(workers), chunks);
  for (std::size_t t = 0; t < n; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace fkit
