#pragma once

#include <cstdint>

namespace cascade {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Used as a counter-based
// generator: every draw is a pure function of (seed, stream, counter), so
// fields are reproducible bit-for-bit regardless of evaluation order or
// language.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t counter) {
  const std::uint64_t x = splitmix64(splitmix64(seed ^ (stream * 0xd1342543de82ef95ULL)) + counter);
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace cascade
