#pragma once

#include <cstdint>
#include <random>

namespace pskit::rng {

// splitmix64; used both as a mixer and to derive independent per-trial seeds
// from a master seed by counter, so trials need no shared generator state.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t counter) {
  return splitmix64(master ^ splitmix64(counter + 0x5851f42d4c957f2dULL));
}

inline std::mt19937_64 engine(std::uint64_t seed) { return std::mt19937_64(splitmix64(seed)); }

}  // namespace pskit::rng
