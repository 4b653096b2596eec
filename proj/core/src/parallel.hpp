// Chunked parallel-for with a machine-independent reduction order: work
// is split into a fixed number of chunks so results do not depend on the
// thread count.
#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace coauthnet::detail {

inline int worker_count(int chunks) {
  unsigned hw = std::thread::hardware_concurrency();
  int workers = hw == 0 ? 2 : static_cast<int>(hw);
  return std::min(workers, chunks);
}

// Invokes fn(chunk_index, begin, end) for `chunk_count` half-open ranges
// covering [0, total). Callers reduce per-chunk results in chunk order.
inline void run_chunks(long long total, int chunk_count,
                       const std::function<void(int, long long, long long)>& fn) {
  if (total <= 0 || chunk_count <= 0) return;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int c = next.fetch_add(1); c < chunk_count; c = next.fetch_add(1)) {
      long long begin = total * c / chunk_count;
      long long end = total * (c + 1) / chunk_count;
      if (begin < end) fn(c, begin, end);
    }
  };
  int workers = worker_count(chunk_count);
  if (workers <= 1) {
    worker();
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(static_cast<size_t>(workers));
  for (int t = 0; t < workers; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

}  // namespace coauthnet::detail
