#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>

// Counter-based hashing and variate generation. Every random number in the
// library is a pure function of (seed, index), so evaluation order and
// thread scheduling never change results.
//
// Mixer: the SplitMix64 finalizer (Stafford "Mix13"):
//   z ^= z >> 30; z *= 0xbf58476d1ce4e5b9;
//   z ^= z >> 27; z *= 0x94d049bb133111eb;
//   z ^= z >> 31;
// Counter increment: the golden-ratio constant 0x9e3779b97f4a7c15.

namespace glint::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

/// Integer coordinates of a seed on one of the virtual grids. `stream`
/// separates independent seed families that share coordinates.
class SeedKey {
 public:
  static constexpr std::size_t kCapacity = 12;

  SeedKey() = default;
  SeedKey(std::initializer_list<std::int64_t> ints, std::uint32_t stream = 0);

  SeedKey& push(std::int64_t v);
  std::span<const std::int64_t> ints() const { return {ints_.data(), size_}; }
  std::uint32_t stream() const { return stream_; }
  void set_stream(std::uint32_t s) { stream_ = s; }

  bool operator==(const SeedKey& o) const;

 private:
  std::array<std::int64_t, kCapacity> ints_{};
  std::size_t size_ = 0;
  std::uint32_t stream_ = 0;
};

/// 64-bit seed of a key. Order-sensitive and length-sensitive: (1) and (1, 0)
/// hash differently.
std::uint64_t hash_seed(const SeedKey& key);

/// Uniform double in [0, 1) with 53 random bits; SplitMix64 evaluated at
/// counter position `index` of the stream started by `seed`.
inline double uniform(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t z = mix64(mix64(seed) + (index + 1) * kGolden);
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

/// Standard normal quantile. Arguments outside (0, 1) are clamped to the
/// nearest representable interior value (DBL_MIN and 1 - 2^-53).
double normal_quantile(double u);

/// mu + sigma * normal_quantile(u). sigma == 0 returns mu exactly.
double gaussian_from_uniform(double u, double mu, double sigma);

}  // namespace glint::rng
