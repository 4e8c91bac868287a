#pragma once

#include <cstdint>
#include <random>

namespace canopy {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream derivation rule, part of the output contract: replicate i of a run
/// with master seed s uses an engine seeded with derive_seed(s, i). Emitted
/// records carry this per-replicate seed so any single replicate can be rerun
/// standalone.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t replicate) {
  return splitmix64(master_seed + 0x9e3779b97f4a7c15ULL * (replicate + 1));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

}  // namespace canopy
