#pragma once

#include <cstdint>

namespace nne {

/// Splitmix64 generator. Chosen over std::mt19937 so that seeded artifacts
/// (topologies, requests, sweeps) are reproducible bit-for-bit across
/// standard library implementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t next_below(std::uint64_t n) {
    // Rejection-free modulo is fine here: n is tiny relative to 2^64 in all
    // uses, so the bias is far below anything observable.
    return next() % n;
  }

 private:
  std::uint64_t state_;
};

/// Deterministic stream derivation: hashes (seed, stream) into a new seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mix(seed ^ (0xA0761D6478BD642FULL * (stream + 1)));
  return mix.next();
}

}  // namespace nne
