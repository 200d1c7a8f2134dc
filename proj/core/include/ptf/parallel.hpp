#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace ptf {

inline int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(chunk_index, begin, end) over a contiguous index range split into
/// one chunk per worker. Results must be merged by the caller in chunk order
/// so the outcome is independent of scheduling.
template <typename Fn>
void parallel_chunks(std::size_t begin, std::size_t end, int workers, Fn&& fn) {
  const std::size_t total = end > begin ? end - begin : 0;
  const int w = resolve_workers(workers);
  if (total == 0) return;
  const auto nchunks = static_cast<std::size_t>(w);
  if (w == 1 || total < 2 * nchunks) {
    fn(std::size_t{0}, begin, end);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nchunks);
  const std::size_t step = (total + nchunks - 1) / nchunks;
  for (std::size_t c = 0; c < nchunks; ++c) {
    const std::size_t lo = begin + c * step;
    if (lo >= end) break;
    const std::size_t hi = lo + step < end ? lo + step : end;
    pool.emplace_back([&fn, c, lo, hi] { fn(c, lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ptf
