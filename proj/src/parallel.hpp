#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace curvelab {

// Calls body(i) for every i in [0, count) on up to `jobs` threads.  If any
// call throws, the exception from the smallest failing index is rethrown, so
// the observable outcome does not depend on scheduling.
template <class Body>
void parallel_for(std::uint64_t count, int jobs, Body&& body) {
  const auto workers = static_cast<std::uint64_t>(std::max(1, jobs));
  if (workers == 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> first_error{UINT64_MAX};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::uint64_t> error_index(workers, UINT64_MAX);
  auto run = [&](std::uint64_t w) {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count || i > first_error.load()) return;
      try {
        body(i);
      } catch (...) {
        if (i < error_index[w]) {
          error_index[w] = i;
          errors[w] = std::current_exception();
        }
        std::uint64_t cur = first_error.load();
        while (i < cur && !first_error.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  const auto n = std::min(workers, count);
  for (std::uint64_t w = 1; w < n; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  std::uint64_t best = UINT64_MAX;
  std::exception_ptr err;
  for (std::uint64_t w = 0; w < n; ++w) {
    if (errors[w] && error_index[w] < best) {
      best = error_index[w];
      err = errors[w];
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace curvelab
