#pragma once

#include <cstdint>

namespace qwalk {

// SplitMix64 with the standard finalizer constants. All seeded randomness in
// the library and the CLI flows through this generator so that runs are
// bit-reproducible across platforms.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53 mantissa bits
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [-1, 1)
  double uniform_sym() { return 2.0 * uniform() - 1.0; }
};

}  // namespace qwalk
