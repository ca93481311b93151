#include "glint/rng.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace glint::rng {

SeedKey::SeedKey(std::initializer_list<std::int64_t> ints, std::uint32_t stream)
    : stream_(stream) {
  for (auto v : ints) push(v);
}

SeedKey& SeedKey::push(std::int64_t v) {
  if (size_ == kCapacity) throw std::length_error("SeedKey capacity exceeded");
  ints_[size_++] = v;
  return *this;
}

bool SeedKey::operator==(const SeedKey& o) const {
  if (size_ != o.size_ || stream_ != o.stream_) return false;
  return std::equal(ints_.begin(), ints_.begin() + size_, o.ints_.begin());
}

std::uint64_t hash_seed(const SeedKey& key) {
  std::uint64_t h = mix64(0x243f6a8885a308d3ULL ^ (std::uint64_t{key.stream()} << 32) ^
                          key.ints().size());
  std::uint64_t salt = 0;
  for (std::int64_t v : key.ints()) {
    salt += kGolden;
    h = mix64(h ^ mix64(static_cast<std::uint64_t>(v) + salt));
  }
  return h;
}

namespace {

// Acklam's rational approximation; relative error below 1.2e-9 over (0, 1).
constexpr double kA[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                         -2.759285104469687e+02, 1.383577518672690e+02,
                         -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                         -1.556989798598866e+02, 6.680131188771972e+01,
                         -1.328068155288572e+01};
constexpr double kC[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                         -2.400758277161838e+00, -2.549732539343734e+00,
                         4.374664141464968e+00, 2.938163982698783e+00};
constexpr double kD[] = {7.784695709041462e-03, 3.224671290700398e-01,
                         2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kLow = 0.02425;

double tail(double q) {
  return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
         ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
}

}  // namespace

double normal_quantile(double u) {
  u = std::clamp(u, DBL_MIN, 1.0 - 0x1.0p-53);
  if (u < kLow) return tail(std::sqrt(-2.0 * std::log(u)));
  if (u > 1.0 - kLow) return -tail(std::sqrt(-2.0 * std::log1p(-u)));
  const double q = u - 0.5;
  const double r = q * q;
  return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
         (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

double gaussian_from_uniform(double u, double mu, double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("gaussian_from_uniform: sigma must be >= 0");
  if (sigma == 0.0) return mu;
  return mu + sigma * normal_quantile(u);
}

}  // namespace glint::rng
