#pragma once

#include <exception>
#include <thread>
#include <vector>

namespace lwfr {

/// Static-partition parallel loop over [0, n): fn(begin, end) per chunk.
/// Runs inline when nthreads <= 1. The first exception raised by any chunk
/// is rethrown after all threads join.
template <class Fn>
void parallel_for(int n, int nthreads, Fn&& fn) {
  if (nthreads <= 1 || n <= 1) {
    fn(0, n);
    return;
  }
  const int k = std::min(nthreads, n);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(k);
  pool.reserve(k);
  for (int t = 0; t < k; ++t) {
    const int b = static_cast<int>(static_cast<long long>(n) * t / k);
    const int e = static_cast<int>(static_cast<long long>(n) * (t + 1) / k);
    pool.emplace_back([&fn, &errs, b, e, t] {
      try {
        fn(b, e);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& ep : errs)
    if (ep) std::rethrow_exception(ep);
}

} // namespace lwfr
