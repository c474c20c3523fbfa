// Minimal worker-pool helper.  All heavy loops in the library are pure per
// item, so a static block split is enough; ORTHOMF_THREADS caps the pool.

#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace orthomf {

inline long thread_count() {
  long hw = (long)std::thread::hardware_concurrency();
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("ORTHOMF_THREADS")) {
    long cap = std::atol(env);
    if (cap >= 1 && cap < hw) hw = cap;
  }
  return hw;
}

// fn(i) for i in [0, count), partitioned over the pool.  fn must be safe to
// run concurrently on distinct i.
inline void parallel_for(long count, const std::function<void(long)>& fn) {
  long t = std::min(thread_count(), count);
  if (t <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (long w = 0; w < t; ++w)
    pool.emplace_back([&, w] {
      for (long i = w; i < count; i += t) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace orthomf
