#pragma once

#include <cstdint>
#include <string_view>

namespace nvpool {

/// SplitMix64 finalizer; full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based uniform stream: draw i is a pure function of (seed, i),
/// so consumers may read any index in any order (or in parallel) and still
/// reproduce bit-identical values.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : key_(mix64(seed)) {}

  /// Uniform variate in the open interval (0, 1).
  double at(std::uint64_t index) const {
    std::uint64_t z = mix64(key_ + 0x9e3779b97f4a7c15ULL * (index + 1));
    return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

/// Deterministic sub-seed for a named stream (e.g. one experiment cell).
/// FNV-1a over the label, mixed with the base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return mix64(base ^ mix64(h));
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(base ^ mix64(0x51fc1a2d4e3b9657ULL + index));
}

}  // namespace nvpool
