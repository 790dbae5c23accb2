#pragma once

#include <algorithm>
#include <limits>
#include <thread>
#include <utility>
#include <vector>

namespace bmslice {

inline int default_workers() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Evaluates fn(i) for i in [0, count) and returns the maximum value together
/// with the lowest index attaining it. Chunks are merged in index order, so
/// the result is identical for any worker count.
template <typename Fn>
std::pair<double, long> parallel_argmax(long count, int workers, Fn&& fn) {
  if (count <= 0) return {-std::numeric_limits<double>::infinity(), -1};
  workers = std::max(1, workers);
  if (workers == 1 || count < 256) {
    double best = fn(0);
    long best_i = 0;
    for (long i = 1; i < count; ++i) {
      double v = fn(i);
      if (v > best) {
        best = v;
        best_i = i;
      }
    }
    return {best, best_i};
  }

  int nchunks = std::min<long>(workers, count);
  std::vector<std::pair<double, long>> partial(nchunks);
  std::vector<std::thread> threads;
  threads.reserve(nchunks);
  long chunk = (count + nchunks - 1) / nchunks;
  for (int c = 0; c < nchunks; ++c) {
    threads.emplace_back([&, c] {
      long lo = c * chunk;
      long hi = std::min(count, lo + chunk);
      double best = fn(lo);
      long best_i = lo;
      for (long i = lo + 1; i < hi; ++i) {
        double v = fn(i);
        if (v > best) {
          best = v;
          best_i = i;
        }
      }
      partial[c] = {best, best_i};
    });
  }
  for (auto& t : threads) t.join();

  std::pair<double, long> out = partial[0];
  for (int c = 1; c < nchunks; ++c) {
    if (partial[c].first > out.first) out = partial[c];
  }
  return out;
}

}  // namespace bmslice
