#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace sclab {

// 64-bit avalanche mixer (splitmix64 step). Every random decision in the
// artifact bottoms out here, so streams are identical across platforms;
// the standard library distributions are deliberately avoided.
std::uint64_t mix64(std::uint64_t x);

// FNV-1a over a tag string, for namespacing seed streams.
std::uint64_t hash_tag(std::string_view tag);

// Stable sub-seed derivation: (master, tag, indices) -> 64-bit seed.
// derive_seed(m, tag, a, b, c) = mix(mix(mix(mix(m ^ fnv(tag)) ^ a) ^ b) ^ c).
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t a = 0, std::uint64_t b = 0,
                          std::uint64_t c = 0);

/// Counter-based pseudorandom stream (splitmix64).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double next_u01();                      // [0, 1), 53-bit resolution
  std::size_t next_index(std::size_t n);  // uniform over [0, n)

 private:
  std::uint64_t state_;
};

// Smallest i with u < cdf(i). Zero-probability symbols are never selected
// (the trailing boundary falls back to the last positive-mass symbol).
std::size_t inverse_cdf(const std::vector<double>& probs, double u);

}  // namespace sclab
