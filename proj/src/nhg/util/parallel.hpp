#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace nhg {

/// Applies `fn` to 0..count-1 on a small pool of async tasks and returns
/// the results in index order. Exceptions propagate from the lowest index.
template <typename Fn>
auto parallel_map(std::size_t count, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using R = decltype(fn(std::size_t{}));
  std::vector<R> out;
  out.reserve(count);
  if (count <= 1) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
    return out;
  }
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
  std::vector<std::future<std::vector<R>>> futures;
  for (std::size_t w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [w, workers, count, &fn] {
      std::vector<R> part;
      for (std::size_t i = w; i < count; i += workers) part.push_back(fn(i));
      return part;
    }));
  }
  std::vector<std::vector<R>> parts;
  for (auto& f : futures) parts.push_back(f.get());
  for (std::size_t i = 0; i < count; ++i) out.push_back(std::move(parts[i % workers][i / workers]));
  return out;
}

}  // namespace nhg
