#ifndef AHS_PARALLEL_HPP
#define AHS_PARALLEL_HPP

#include <functional>
#include <thread>
#include <vector>

namespace ahs {

// Runs fn(i) for i in [0, count) across a fixed thread pool and returns the
// results indexed by i, so the output is independent of scheduling.
template <typename T>
std::vector<T> parallel_map(size_t count, const std::function<T(size_t)>& fn,
                            unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<T> out(count);
  if (count == 0) return out;
  threads = std::min<size_t>(threads, count);
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        out[i] = fn(i);
      }
    });
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace ahs

#endif  // AHS_PARALLEL_HPP
