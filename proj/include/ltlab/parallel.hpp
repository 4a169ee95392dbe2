#pragma once
// Tiny fork-join helper. Work items are indexed, results land in
// caller-preallocated slots, so merge order never depends on scheduling.

#include <cstdlib>
#include <thread>
#include <vector>

namespace ltlab {

inline int thread_count(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LTLAB_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

template <class F>
void parallel_for(int n, int nthreads, F&& f) {
  if (n <= 0) return;
  nthreads = std::min(nthreads, n);
  if (nthreads <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(size_t(nthreads));
  for (int t = 0; t < nthreads; ++t)
    pool.emplace_back([=] {
      for (int i = t; i < n; i += nthreads) f(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace ltlab
