#pragma once

#include <cstdint>
#include <random>

namespace dwet {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent generator for stream `index` under a master seed. Streams are
/// derived from the (seed, index) pair only, so trial results do not depend on
/// which thread runs them or in what order.
inline Rng make_stream(std::uint64_t seed, std::uint64_t index,
                       std::uint64_t salt = 0) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  s = splitmix64(s ^ salt);
  return Rng(s);
}

}  // namespace dwet
