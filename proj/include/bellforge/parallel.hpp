#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace bellforge {

// Worker cap: BELLFORGE_THREADS wins over hardware concurrency when set.
inline std::size_t worker_count() {
  std::size_t hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("BELLFORGE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = static_cast<std::size_t>(v);
  }
  return hw;
}

namespace detail {
inline thread_local int parallel_depth = 0;
}

// Runs fn(i) for i in [0, total). Work items must be independent; callers merge
// per-index results so the outcome is identical at any worker count. Nested
// calls run serially.
inline void parallel_for(std::size_t total, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = worker_count();
  if (workers <= 1 || total <= 1 || detail::parallel_depth > 0) {
    for (std::size_t i = 0; i < total; ++i) fn(i);
    return;
  }
  const std::size_t used = workers < total ? workers : total;
  std::vector<std::thread> pool;
  pool.reserve(used);
  for (std::size_t w = 0; w < used; ++w) {
    pool.emplace_back([&, w] {
      ++detail::parallel_depth;
      for (std::size_t i = w; i < total; i += used) fn(i);
      --detail::parallel_depth;
    });
  }
  for (auto& t : pool) t.join();
}

// splitmix64: stable per-item seed derivation, independent of scheduling.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kDefaultSeed = 0x5EEDB311ULL;

}  // namespace bellforge
