#pragma once

// Independent reference computations shared by the unit and acceptance
// tests. Nothing here calls into the library under test.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

/// Exact b(n, p) pmf by the multiplicative recurrence from P(0) = (1-p)^n.
inline std::vector<double> binomial_pmf(int n, double p) {
  std::vector<double> pmf(n + 1, 0.0);
  if (p <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p >= 1.0) {
    pmf[n] = 1.0;
    return pmf;
  }
  pmf[0] = std::pow(1.0 - p, n);
  for (int k = 1; k <= n; ++k) pmf[k] = pmf[k - 1] * (n - k + 1) / k * p / (1.0 - p);
  return pmf;
}

/// Standard normal quantile by bisection on erfc.
inline double normal_quantile(double u) {
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(-mid / std::numbers::sqrt2) < u) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Beckmann and GGX NDFs written out directly.
inline double beckmann(double alpha, double cos_t) {
  if (cos_t <= 0.0) return 0.0;
  const double c2 = cos_t * cos_t;
  const double tan2 = (1.0 - c2) / c2;
  return std::exp(-tan2 / (alpha * alpha)) / (std::numbers::pi * alpha * alpha * c2 * c2);
}

inline double ggx(double alpha, double cos_t) {
  if (cos_t <= 0.0) return 0.0;
  const double a2 = alpha * alpha;
  const double c2 = cos_t * cos_t;
  const double d = c2 * (a2 - 1.0) + 1.0;
  return a2 / (std::numbers::pi * d * d);
}

/// Exact Beckmann Smith Lambda with erf.
inline double beckmann_lambda(double alpha, double cos_t) {
  const double tan_t = std::sqrt(1.0 - cos_t * cos_t) / cos_t;
  const double a = 1.0 / (alpha * tan_t);
  return 0.5 * (std::erf(a) - 1.0) + std::exp(-a * a) / (2.0 * a * std::sqrt(std::numbers::pi));
}

/// Composite Gauss-Legendre (5 points per panel) of f on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, int panels) {
  static const double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                              0.9061798459386640};
  static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                              0.2369268850561891, 0.2369268850561891};
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int i = 0; i < 5; ++i) sum += w[i] * f(mid + 0.5 * h * x[i]);
  }
  return 0.5 * h * sum;
}

/// Integral of D(h) cos(theta_h) over the hemisphere.
inline double ndf_projected_integral(const std::function<double(double)>& d) {
  return 2.0 * std::numbers::pi *
         integrate([&](double t) { return d(std::cos(t)) * std::cos(t) * std::sin(t); }, 0.0,
                   0.5 * std::numbers::pi, 4000);
}

/// Small deterministic generator for test inputs (xorshift64*).
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : state_(seed * 2 + 1) {}
  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dULL;
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace oracle
