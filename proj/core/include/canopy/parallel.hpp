#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "canopy/rng.hpp"

namespace canopy {

// Runs fn(replicate_index, rng) for indices 0..n-1 over a worker pool and
// returns the results in index order. Replicate i always gets the engine
// seeded with derive_seed(master_seed, i), so the output is identical for any
// worker count.
template <class F>
auto parallel_replicates(std::uint64_t n, std::uint64_t master_seed, int workers, F&& fn)
    -> std::vector<decltype(fn(std::uint64_t{}, std::declval<Rng&>()))> {
  using T = decltype(fn(std::uint64_t{}, std::declval<Rng&>()));
  std::vector<T> results(n);
  if (n == 0) return results;
  if (workers < 1) workers = 1;
  if (static_cast<std::uint64_t>(workers) > n) workers = static_cast<int>(n);
  std::atomic<std::uint64_t> next{0};
  auto body = [&] {
    for (std::uint64_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      Rng rng = make_rng(derive_seed(master_seed, i));
      results[i] = fn(i, rng);
    }
  };
  if (workers == 1) {
    body();
    return results;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace canopy
