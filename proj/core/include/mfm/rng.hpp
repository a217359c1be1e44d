#pragma once

#include <array>
#include <cstdint>

namespace mfm {

/// SplitMix64 finalizer. Used to expand seeds and to derive well-separated
/// seeds from a base seed and a stream index.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for realization `index` of an ensemble: splitmix64(base XOR index).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base ^ index);
}

/// xoshiro256++ 1.0 (Blackman and Vigna). The state is filled from the seed
/// with successive SplitMix64 outputs, as its authors recommend.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      word = splitmix64(x);
      x += 0x9E3779B97F4A7C15ULL;
    }
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  constexpr result_type operator()() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
};

/// Seedable, platform-independent random stream.
///
/// The engine's integer sequence is fully specified by its algorithm. All
/// derived variates are produced by the conversions below rather than by
/// <random> distributions, whose algorithms are implementation-defined, so
/// identical seeds give identical streams on every platform. (normal() goes
/// through libm and is bit-exact only where libm is.)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, n). Requires n > 0.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal by the Box-Muller transform. Consumes two uniforms per
  /// pair and caches the second variate.
  double normal();

  /// Poisson(lambda) by sequential inversion of the CDF. Intended for the
  /// small rates used for trade sizes.
  std::uint64_t poisson(double lambda);

 private:
  Xoshiro256pp engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace mfm
