#pragma once

// Seedable, splittable PRNG used for every stochastic draw in the toolkit.
// splitmix64 core: tiny state, cross-platform bit-exact output, and cheap
// derivation of statistically independent child streams. std::normal_distribution
// et al. are deliberately avoided: their output is implementation-defined,
// which would break byte-identical result files across toolchains.

#include <cmath>
#include <cstdint>
#include <string_view>

namespace dqc1bench {

inline std::uint64_t fmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return fmix64(state_);
  }

  // uniform on [0,1) with 53 random mantissa bits
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Box-Muller (cosine branch only, sine discarded for stream simplicity)
  double gaussian() {
    double u = uniform01();
    while (u == 0.0) u = uniform01();
    const double v = uniform01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * 3.14159265358979323846 * v);
  }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t state_;
};

// Deterministic child stream: children with distinct salts are decorrelated
// from each other and from the parent sequence.
inline std::uint64_t child_seed(std::uint64_t parent, std::uint64_t salt) {
  return fmix64(parent + 0x9E3779B97F4A7C15ull * (salt + 1));
}

// FNV-1a, for deriving salts from stable string labels ("axis-x", "drift", ...)
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace dqc1bench
