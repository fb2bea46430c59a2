#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace overfit {

/// Probe streams are cut into fixed blocks of this many indices.
inline constexpr std::size_t kChunkSize = 4096;

/// Hardware concurrency capped by OVERFIT_FORGE_THREADS when set (minimum 1).
std::size_t worker_count();

/// Evaluates `chunk(begin, end)` for fixed-size blocks of [0, total) on up to
/// worker_count() threads, then folds the per-block partials in block order.
/// The result is the same for every worker count.
template <class Partial, class ChunkFn, class Combine>
Partial chunked_reduce(std::size_t total, Partial init, ChunkFn chunk, Combine combine) {
  const std::size_t blocks = (total + kChunkSize - 1) / kChunkSize;
  std::vector<Partial> partials(blocks, init);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t b = next++; b < blocks; b = next++) {
      const std::size_t begin = b * kChunkSize;
      partials[b] = chunk(begin, std::min(total, begin + kChunkSize));
    }
  };
  const std::size_t workers = std::min(worker_count(), blocks);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  Partial acc = init;
  for (auto& p : partials) acc = combine(acc, p);
  return acc;
}

}  // namespace overfit
