#pragma once

#include <cstdint>
#include <random>

namespace tbl {

// splitmix64 finalizer; used to derive decorrelated per-(shot, role) stream
// seeds from a master seed so shots are reproducible and parallelizable.
inline std::uint64_t mix_seed(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t shot,
                                 std::uint64_t role) {
  return mix_seed(mix_seed(master ^ 0x5851f42d4c957f2dULL) + shot * 0x100000001b3ULL + role);
}

inline std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t shot,
                                   std::uint64_t role) {
  return std::mt19937_64(stream_seed(master, shot, role));
}

}  // namespace tbl
