#include "glint/counting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "glint/rng.hpp"

namespace glint::counting {

namespace {

void check_probability(double p, const char* where) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(where) + ": p must lie in [0, 1]");
}

std::uint64_t rounded_trials(double n) {
  return static_cast<std::uint64_t>(std::llround(std::max(n, 0.0)));
}

// P(b(n, p) == 0) for n >= 1.
double zero_class(double n, double p) {
  if (p >= 1.0) return 0.0;
  return std::exp(n * std::log1p(-p));
}

std::int64_t draw(double n, double p, std::uint64_t seed, Sampler sampler) {
  return sample_binomial({n, p, seed}, sampler);
}

}  // namespace

void CountingParams::validate() const {
  check_probability(p, "CountingParams");
  if (!(n_trials >= 0.0)) throw std::invalid_argument("CountingParams: n_trials must be >= 0");
}

GatedParams gated_parameters(double n, double p) {
  check_probability(p, "gated_parameters");
  GatedParams g;
  g.p_at_least_one = n > 0.0 ? 1.0 - zero_class(n, p) : 0.0;
  g.mu = std::max(0.0, (n - 1.0) * p);
  g.sigma = std::sqrt(std::max(0.0, (n - 1.0) * p * (1.0 - p)));
  return g;
}

double gate_probability(double n, double p) {
  if (n <= 0.0 || p <= 0.0) return 0.0;
  if (n < 1.0) return n * p;
  return -std::expm1(p >= 1.0 ? -INFINITY : n * std::log1p(-p));
}

std::int64_t sample_binomial_reference(std::uint64_t n, double p, std::uint64_t seed,
                                       std::uint64_t index) {
  check_probability(p, "sample_binomial_reference");
  std::int64_t count = 0;
  for (std::uint64_t k = 1; k <= n; ++k) count += rng::uniform(seed, index + k) < p ? 1 : 0;
  return count;
}

std::int64_t sample_binomial_gated(double n, double p, double theta0, double theta1) {
  check_probability(p, "sample_binomial_gated");
  const double gate = gate_probability(n, p);
  if (!(theta0 < gate)) return 0;
  if (n <= 1.0) return 1;

  // Moments of b(n, p) conditioned on count >= 1, written as shifts of the
  // unconditioned central moments so that they stay accurate when the zero
  // class vanishes.
  const double q0 = 1.0 - gate;
  const double mean = n * p;
  const double var = mean * (1.0 - p);
  const double mu3 = var * (1.0 - 2.0 * p);
  const double m = mean / gate;
  const double d = mean - m;
  const double var_c = std::max(0.0, (var + d * d - q0 * m * m) / gate);
  const double sigma = std::sqrt(var_c);

  double x = m;
  if (sigma > 1e-12) {
    const double mu3_c = (mu3 + 3.0 * var * d + d * d * d + q0 * m * m * m) / gate;
    const double skew = std::clamp(mu3_c / (var_c * sigma), -2.0, 2.0);
    const double z = rng::normal_quantile(theta1);
    x = m + sigma * (z + skew * (z * z - 1.0) / 6.0);
  }
  const double top = std::ceil(n);
  return static_cast<std::int64_t>(std::clamp(std::floor(x + 0.5), 1.0, top));
}

std::int64_t sample_binomial_gated_floor(double n, double p, double theta0, double theta1) {
  const GatedParams g = gated_parameters(n, p);
  if (!(theta0 < g.p_at_least_one)) return 0;
  const double x = 1.0 + rng::gaussian_from_uniform(theta1, g.mu, g.sigma);
  return static_cast<std::int64_t>(std::clamp(std::floor(x), 1.0, std::max(1.0, std::ceil(n))));
}

std::int64_t sample_binomial_classic(double n, double p, std::uint64_t seed) {
  check_probability(p, "sample_binomial_classic");
  const std::uint64_t trials = rounded_trials(n);
  const double mean = static_cast<double>(trials) * p;
  if (mean > 5.0) {
    const double x = rng::gaussian_from_uniform(rng::uniform(seed, 0), mean,
                                                std::sqrt(mean * (1.0 - p)));
    return static_cast<std::int64_t>(
        std::clamp(std::floor(x), 0.0, static_cast<double>(trials)));
  }
  return sample_binomial_reference(trials, p, seed);
}

std::int64_t sample_binomial(const CountingParams& params, Sampler sampler) {
  switch (sampler) {
    case Sampler::gated:
      return sample_binomial_gated(params.n_trials, params.p, rng::uniform(params.seed, 0),
                                   rng::uniform(params.seed, 1));
    case Sampler::reference:
      return sample_binomial_reference(rounded_trials(params.n_trials), params.p, params.seed);
    case Sampler::classic:
      return sample_binomial_classic(params.n_trials, params.p, params.seed);
  }
  throw std::invalid_argument("sample_binomial: unknown sampler");
}

double count_facets_stratified(double density, double area) {
  if (!(area >= 0.0)) throw std::invalid_argument("count_facets_stratified: area must be >= 0");
  return std::floor(density * area);
}

std::int64_t count_facets_uniform(std::uint64_t n, double area, std::uint64_t seed,
                                  std::uint64_t index) {
  if (!(area >= 0.0 && area <= 1.0))
    throw std::invalid_argument("count_facets_uniform: area must lie in [0, 1]");
  return sample_binomial_reference(n, area, seed, index);
}

LodWeights lod_weights(double area, const LodPair& lods) {
  if (!(lods.area_lo > 0.0) || !(lods.area_hi >= lods.area_lo))
    throw std::invalid_argument("LodPair: need 0 < area_lo <= area_hi");
  const double slack = 1e-12 * lods.area_hi;
  if (!(area >= lods.area_lo - slack && area <= lods.area_hi + slack))
    throw std::domain_error("footprint area " + std::to_string(area) + " outside LOD range [" +
                            std::to_string(lods.area_lo) + ", " + std::to_string(lods.area_hi) +
                            "]");
  if (lods.area_hi == lods.area_lo) return {1.0, 0.0};
  const double span = lods.area_hi - lods.area_lo;
  const double w_hi = std::clamp((area - lods.area_lo) / span, 0.0, 1.0);
  return {1.0 - w_hi, w_hi};
}

std::int64_t distribute_binomial(double area, const LodPair& lods, double density, double p,
                                 Sampler sampler) {
  const LodWeights w = lod_weights(area, lods);
  return draw(w.w_hi * density * lods.area_hi, p, lods.seed_hi, sampler) +
         draw(w.w_lo * density * lods.area_lo, p, lods.seed_lo, sampler);
}

double blend_binomial_zirr(double area, const LodPair& lods, double density, double p,
                           Sampler sampler) {
  const double w = lod_weights(area, lods).w_lo;
  const auto top = static_cast<double>(draw(density * lods.area_hi, p, lods.seed_hi, sampler));
  const auto bottom = static_cast<double>(draw(density * lods.area_lo, p, lods.seed_lo, sampler));
  return (1.0 - w) * top + w * bottom;
}

std::vector<TrialPoint> materialize(const TrialField& field) {
  check_probability(field.p, "TrialField");
  std::vector<TrialPoint> points;
  points.reserve(field.n_points);
  const auto side = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(field.n_points))));
  for (std::size_t i = 0; i < field.n_points; ++i) {
    const double jx = rng::uniform(field.seed, 3 * i);
    const double jy = rng::uniform(field.seed, 3 * i + 1);
    Vec2 pos{jx, jy};
    if (field.layout == TrialLayout::stratified) {
      const auto cx = static_cast<double>(i % side);
      const auto cy = static_cast<double>(i / side);
      pos = Vec2{(cx + jx), (cy + jy)} / static_cast<double>(side);
    }
    points.push_back({pos, rng::uniform(field.seed, 3 * i + 2)});
  }
  return points;
}

std::int64_t spatialized_trials_oracle(const TrialField& field, const Rect& window) {
  std::int64_t count = 0;
  for (const TrialPoint& pt : materialize(field))
    if (window.contains(pt.position) && pt.mark < field.p) ++count;
  return count;
}

NdfSample counting_ndf(double d_h, double d_n, double ratio, double n_in_footprint,
                       Sampler sampler, std::uint64_t seed) {
  if (!(d_n > 0.0)) throw std::invalid_argument("counting_ndf: d_n must be > 0");
  if (!(ratio > 0.0 && ratio <= 1.0))
    throw std::invalid_argument("counting_ndf: ratio must lie in (0, 1]");
  if (!(n_in_footprint > 0.0)) return {};
  NdfSample out;
  double p = ratio * std::max(d_h, 0.0) / d_n;
  if (p > 1.0) {
    p = 1.0;
    out.clamped = true;
  }
  const auto count = static_cast<double>(draw(n_in_footprint, p, seed, sampler));
  const double n = sampler == Sampler::gated ? n_in_footprint
                                             : static_cast<double>(rounded_trials(n_in_footprint));
  out.value = n > 0.0 ? (d_n / ratio) * count / n : 0.0;
  return out;
}

}  // namespace glint::counting
