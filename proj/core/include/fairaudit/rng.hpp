#pragma once

#include <cstdint>

namespace fairaudit {

/// splitmix64: the fixed, platform-independent generator used for all
/// simulation sampling. Stream splitting is by seed derivation (see
/// derive_seed), so replicates are independent and reduction-order free.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits. Bit-identical on any
  /// IEEE-754 platform.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Derived seed for stream `index` of a base seed (replicate splitting rule).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  SplitMix64 g(base ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  return g.next();
}

}  // namespace fairaudit
