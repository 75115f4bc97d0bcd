#pragma once

#include <cstdint>

namespace hfgrad::rng {

// Counter-based draws: every value is a pure function of (seed, stream, k, j),
// so per-site sampling is independent of evaluation order and thread count.

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t key(std::uint64_t seed, std::uint64_t stream, std::uint64_t k,
                            std::uint64_t j = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ (stream * 0xd1b54a32d192ed03ULL));
  h = splitmix64(h ^ k);
  return splitmix64(h ^ (j * 0x8cb92ba72f3d8dd7ULL));
}

// Uniform in [0, 1).
constexpr double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t k,
                         std::uint64_t j = 0) {
  return static_cast<double>(key(seed, stream, k, j) >> 11) * 0x1.0p-53;
}

enum Stream : std::uint64_t {
  kTheta = 1,
  kPhi = 2,
  kSpecies = 3,
  kNarrowed = 4,
  kThermalZ = 5,
  kThermalAzimuth = 6,
};

}  // namespace hfgrad::rng
