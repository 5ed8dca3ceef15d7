#ifndef RELHYP_PARALLEL_HPP
#define RELHYP_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace relhyp {

inline int default_thread_count() {
  if (const char* env = std::getenv("RELHYP_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

// Runs fn(chunk_index, begin, end) over a fixed chunking of [0, n) and
// returns per-chunk results in chunk order. The chunking is independent of
// the worker count, so any deterministic per-chunk computation merged in
// chunk order gives thread-count independent output.
template <typename R>
std::vector<R> parallel_chunks(long long n, int threads,
                               const std::function<R(int, long long, long long)>& fn,
                               int chunks_per_unit = 64) {
  if (threads < 1) threads = 1;
  long long nchunks = std::min<long long>(n, static_cast<long long>(chunks_per_unit) * 4);
  if (nchunks < 1) nchunks = 1;
  std::vector<R> results(static_cast<size_t>(nchunks));
  std::atomic<long long> next{0};
  auto worker = [&]() {
    while (true) {
      long long c = next.fetch_add(1);
      if (c >= nchunks) break;
      long long lo = n * c / nchunks;
      long long hi = n * (c + 1) / nchunks;
      results[static_cast<size_t>(c)] = fn(static_cast<int>(c), lo, hi);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return results;
}

}  // namespace relhyp

#endif
