#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <vector>

namespace padlock {

/// Splits [0, size) into `threads` contiguous chunks, evaluates
/// `chunk(begin, end)` on each and folds the partial results in chunk order.
/// The fold order is fixed, so the result does not depend on scheduling.
template <class T, class Chunk, class Combine = std::plus<T>>
T parallel_reduce(std::uint64_t size, unsigned threads, T init, Chunk chunk, Combine combine = {}) {
  threads = std::max(1U, threads);
  if (threads == 1 || size < 2) return combine(std::move(init), chunk(std::uint64_t{0}, size));
  const std::uint64_t parts = std::min<std::uint64_t>(threads, size);
  std::vector<std::future<T>> futures;
  futures.reserve(parts);
  for (std::uint64_t p = 0; p < parts; ++p) {
    const std::uint64_t begin = size * p / parts;
    const std::uint64_t end = size * (p + 1) / parts;
    futures.push_back(std::async(std::launch::async, [&chunk, begin, end] { return chunk(begin, end); }));
  }
  for (auto& f : futures) init = combine(std::move(init), f.get());
  return init;
}

}  // namespace padlock
