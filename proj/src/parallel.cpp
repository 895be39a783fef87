#include "usynth/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace usynth {

int DefaultThreadCount()
{
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void ParallelFor(std::int64_t count, int threads, const std::function<void(std::int64_t)>& fn)
{
  if (count <= 0) return;
  if (threads <= 0) threads = DefaultThreadCount();
  if (threads == 1 || count == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::int64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      fn(i);
    }
  };

  const int spawned = static_cast<int>(std::min<std::int64_t>(threads, count)) - 1;
  std::vector<std::thread> pool;
  pool.reserve(spawned);
  for (int i = 0; i < spawned; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace usynth
