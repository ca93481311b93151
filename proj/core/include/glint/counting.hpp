#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "glint/vec.hpp"

// Binomial counting of reflecting facets: an exact reference sampler, the
// gated Gaussian approximation used in production, the classic
// Gaussian/loop approximation used by the baseline, the distributed law
// between two LOD levels and the output-blending baseline.

namespace glint::counting {

enum class Sampler {
  gated,      ///< two uniforms, constant cost
  reference,  ///< explicit Bernoulli trials; ground truth
  classic,    ///< Gaussian when n*p > 5, explicit trials otherwise
};

/// Arguments of one binomial law b(n, p). `n_trials` may be fractional.
struct CountingParams {
  double n_trials = 0.0;
  double p = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Parameters of the gated Gaussian law in its textbook form: the gate
/// P(count >= 1) = 1 - (1-p)^n and the moments of b(n-1, p) (clamped at 0).
struct GatedParams {
  double p_at_least_one = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
};

GatedParams gated_parameters(double n, double p);

/// Gate probability used by the samplers: 1 - (1-p)^n for n >= 1 and n*p
/// for fractional n below one (a single trial that exists with probability n).
double gate_probability(double n, double p);

/// Number of k in [1, n] with uniform(seed, index + k) < p.
std::int64_t sample_binomial_reference(std::uint64_t n, double p, std::uint64_t seed,
                                       std::uint64_t index = 0);

/// Gated Gaussian approximation of b(n, p) from two uniforms.
///
/// The gate fires iff theta0 < gate_probability(n, p); a closed gate returns
/// 0. An open gate draws from the law of b(n, p) conditioned on at least one
/// success: a Gaussian matched to its mean and variance, skew-corrected with a
/// first-order Cornish-Fisher term and rounded to the nearest integer in
/// [1, ceil(n)]. theta1 is consumed as the Gaussian quantile. For n <= 1 the
/// result is 0 or 1.
std::int64_t sample_binomial_gated(double n, double p, double theta0, double theta1);

/// Gated approximation with the unconditioned b(n-1, p) Gaussian and
/// floor(1 + x) discretization (gated_parameters()). Kept for comparison; its
/// distribution drifts from b(n, p) for skewed laws.
std::int64_t sample_binomial_gated_floor(double n, double p, double theta0, double theta1);

/// Baseline approximation: floor of a moment-matched Gaussian when n*p > 5,
/// explicit Bernoulli trials otherwise.
std::int64_t sample_binomial_classic(double n, double p, std::uint64_t seed);

/// One draw of b(params.n_trials, params.p). The reference and classic
/// samplers round fractional trial counts to the nearest integer.
std::int64_t sample_binomial(const CountingParams& params, Sampler sampler);

/// floor(density * area): facets in `area` of a stratified layout.
double count_facets_stratified(double density, double area);

/// b(n, area) through the reference sampler: facets in `area` of a uniform
/// random layout.
std::int64_t count_facets_uniform(std::uint64_t n, double area, std::uint64_t seed,
                                  std::uint64_t index = 0);

/// Two enclosing LOD levels. area_lo == area_hi is allowed and puts all
/// weight on the bottom level.
struct LodPair {
  double area_lo = 1.0;
  double area_hi = 2.0;
  std::uint64_t seed_lo = 0;
  std::uint64_t seed_hi = 1;
};

struct LodWeights {
  double w_lo = 1.0;
  double w_hi = 0.0;
};

/// w_hi = (A - A_lo) / (A_hi - A_lo), w_lo = (A_hi - A) / (A_hi - A_lo).
/// Throws std::domain_error when area lies outside [area_lo, area_hi].
LodWeights lod_weights(double area, const LodPair& lods);

/// b(w_hi * N * A_hi, p) + b(w_lo * N * A_lo, p) with independent seeds; by
/// additivity of the binomial law this is distributed as b(N * A, p).
std::int64_t distribute_binomial(double area, const LodPair& lods, double density, double p,
                                 Sampler sampler);

/// (1 - w) * b(N * A_hi, p) + w * b(N * A_lo, p) with w = w_lo. Mean is
/// correct, variance is not.
double blend_binomial_zirr(double area, const LodPair& lods, double density, double p,
                           Sampler sampler);

enum class TrialLayout { uniform, stratified };

/// Bernoulli-marked points on the unit square.
struct TrialField {
  std::size_t n_points = 64;
  TrialLayout layout = TrialLayout::stratified;
  double p = 0.5;
  std::uint64_t seed = 0;
};

struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;

  double area() const { return (x1 - x0) * (y1 - y0); }
  bool contains(const Vec2& q) const { return q.x >= x0 && q.x < x1 && q.y >= y0 && q.y < y1; }
};

struct TrialPoint {
  Vec2 position;
  double mark = 0.0;  ///< the trial succeeds iff mark < p
};

/// Stratified layouts use a ceil(sqrt(n))^2 grid truncated to its first n
/// cells in row-major order, one jittered point per cell.
std::vector<TrialPoint> materialize(const TrialField& field);

/// Number of points inside `window` whose mark succeeds.
std::int64_t spatialized_trials_oracle(const TrialField& field, const Rect& window);

struct NdfSample {
  double value = 0.0;
  bool clamped = false;  ///< R * d_h / d_n exceeded 1 and was clamped
};

/// Stochastic NDF (d_n / R) * b(n, R * d_h / d_n) / n. An empty footprint
/// (n <= 0) returns 0.
NdfSample counting_ndf(double d_h, double d_n, double ratio, double n_in_footprint,
                       Sampler sampler, std::uint64_t seed);

}  // namespace glint::counting
