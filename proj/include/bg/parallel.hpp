#ifndef BG_PARALLEL_HPP
#define BG_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace bg {

/// Calls fn(begin, end) on contiguous chunks of [0, count). The partition
/// depends only on count, so results written per index are schedule-free.
template <class Fn>
void parallel_chunks(std::size_t count, std::size_t min_chunk, Fn&& fn) {
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t chunks =
      std::clamp<std::size_t>(count / std::max<std::size_t>(1, min_chunk), 1, std::min<std::size_t>(hw, 16));
  if (chunks <= 1) {
    fn(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = count * c / chunks;
    const std::size_t end = count * (c + 1) / chunks;
    workers.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace bg

#endif  // BG_PARALLEL_HPP
