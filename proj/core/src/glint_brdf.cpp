#include "glint/glint_brdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "glint/rng.hpp"

namespace glint {

namespace {

constexpr std::uint32_t kStreamAnisotropic = 1;
constexpr std::uint32_t kStreamBaseline = 2;
constexpr std::uint32_t kStreamLodProbe = 3;

struct Probability {
  double d_n = 0.0;
  double p = 0.0;
  bool clamped = false;
};

Probability reflect_probability(const GlintMaterial& m, double cos_theta_h) {
  Probability out;
  out.d_n = ndf::ndf_d(m.micro.kind, m.micro.alpha, 1.0);
  const double d_h = ndf::ndf_d(m.micro.kind, m.micro.alpha, cos_theta_h);
  out.p = m.ratio * d_h / out.d_n;
  if (out.p > 1.0) {
    out.p = 1.0;
    out.clamped = true;
  }
  return out;
}

std::int64_t draw(double n, double p, std::uint64_t seed, counting::Sampler sampler) {
  return counting::sample_binomial({n, p, seed}, sampler);
}

int level_exponent(double power_of_two_area) {
  int e = 0;
  std::frexp(power_of_two_area, &e);
  return e - 1;
}

GlintNdfResult eval_anisotropic(const grid::Footprint& fp, const Vec3& h, const GlintMaterial& m) {
  GlintNdfResult out;
  const Probability prob = reflect_probability(m, h.z);
  const grid::TetraWeights tw = grid::locate_tetrahedron(fp, {m.max_ratio_level});
  out.trace.anisotropy_used = tw.ratio_used;
  out.trace.clamped = tw.clamped || prob.clamped;
  out.trace.tetrahedron = tw.tetrahedron;

  // Facets per vertex grid are proportional to texel area, rescaled so that
  // the weighted total equals density * footprint area.
  double weighted_area = 0.0;
  for (int i = 0; i < 4; ++i) weighted_area += tw.weights[i] * grid::texel_area(tw.vertices[i]);
  const double facets_scale = m.density * fp.area / weighted_area;

  const grid::AngularSample angular = grid::angular_sample(h, m.micro_roughness);
  double count = 0.0;
  for (int i = 0; i < 4; ++i) {
    const grid::GridVertex& v = tw.vertices[i];
    const double n_vertex = tw.weights[i] * grid::texel_area(v) * facets_scale;
    const grid::SpatialSimplexSample spatial =
        grid::simplex_sample(grid::transform_uv(fp.center, v));
    for (int k = 0; k < 3; ++k) {
      const double n = n_vertex * spatial.weights[k];
      for (int j = 0; j < 4; ++j) {
        const rng::SeedKey key({static_cast<std::int64_t>(m.seed), v.s_level, v.r_level,
                                v.phi_index, spatial.vertex_keys[k][0], spatial.vertex_keys[k][1],
                                angular.cell_keys[j][0], angular.cell_keys[j][1]},
                               kStreamAnisotropic);
        count += angular.weights[j] *
                 static_cast<double>(draw(n, prob.p, rng::hash_seed(key), m.sampler));
        ++out.trace.binomial_calls;
      }
    }
  }
  out.value = (prob.d_n / m.ratio) * count / (m.density * fp.area);
  return out;
}

GlintNdfResult eval_baseline(const grid::Footprint& fp, const Vec3& h, const GlintMaterial& m) {
  GlintNdfResult out;
  const Probability prob = reflect_probability(m, h.z);
  const double cap = static_cast<double>(m.baseline_max_anisotropy);
  const double ratio = std::min(fp.ratio, cap);
  out.trace.anisotropy_used = ratio;
  out.trace.clamped = fp.ratio > cap || prob.clamped;

  // Past the cap the footprint is widened isotropically.
  const double major = length(fp.v0);
  const double area = major * (major / ratio);
  const int steps = std::max(1, static_cast<int>(std::ceil(ratio - 1e-9)));
  const double step_area = area / steps;
  const grid::ScaleBracket bracket = grid::enclose_scale(step_area);
  const double w_lo =
      bracket.hi == bracket.lo ? 1.0 : (bracket.hi - step_area) / (bracket.hi - bracket.lo);

  const grid::AngularSample angular = grid::angular_sample(h, m.micro_roughness);
  double count = 0.0;
  for (int step = 0; step < steps; ++step) {
    const Vec2 pos = fp.center + fp.v0 * ((step + 0.5) / steps - 0.5);
    double level_count[2] = {0.0, 0.0};
    const double level_area[2] = {bracket.lo, bracket.hi};
    for (int level = 0; level < 2; ++level) {
      const double side = std::sqrt(level_area[level]);
      const double gx = pos.x / side - 0.5;
      const double gy = pos.y / side - 0.5;
      const double fx0 = std::floor(gx);
      const double fy0 = std::floor(gy);
      const double fx = gx - fx0;
      const double fy = gy - fy0;
      const double texel_weights[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
      for (int t = 0; t < 4; ++t) {
        const auto tx = static_cast<std::int64_t>(fx0) + (t & 1);
        const auto ty = static_cast<std::int64_t>(fy0) + (t >> 1);
        for (int j = 0; j < 4; ++j) {
          const rng::SeedKey key({static_cast<std::int64_t>(m.seed),
                                  level_exponent(level_area[level]), tx, ty,
                                  angular.cell_keys[j][0], angular.cell_keys[j][1]},
                                 kStreamBaseline);
          level_count[level] +=
              texel_weights[t] * angular.weights[j] *
              static_cast<double>(draw(m.density * level_area[level], prob.p,
                                       rng::hash_seed(key), m.baseline_sampler));
          ++out.trace.binomial_calls;
        }
      }
    }
    count += (1.0 - w_lo) * level_count[1] + w_lo * level_count[0];
  }
  out.value = (prob.d_n / m.ratio) * count / (m.density * area);
  return out;
}

}  // namespace

void GlintMaterial::validate() const {
  micro.validate();
  if (!(ratio > 0.0 && ratio <= 1.0)) throw std::invalid_argument("GlintMaterial: R must lie in (0, 1]");
  if (!(density > 0.0)) throw std::invalid_argument("GlintMaterial: density must be > 0");
  if (!(micro_roughness > 0.0))
    throw std::invalid_argument("GlintMaterial: micro_roughness must be > 0");
  if (max_ratio_level < 1 || max_ratio_level > 24)
    throw std::invalid_argument("GlintMaterial: max_ratio_level must lie in [1, 24]");
  if (baseline_max_anisotropy < 1)
    throw std::invalid_argument("GlintMaterial: baseline_max_anisotropy must be >= 1");
}

GlintNdfResult eval_glint_ndf(const grid::Footprint& footprint, const ndf::ShadingFrame& frame,
                              const GlintMaterial& material) {
  const Vec3 h = Basis::from_normal(frame.n).to_local(frame.h);
  if (material.mode == GlintMode::zirr_baseline) return eval_baseline(footprint, h, material);
  return eval_anisotropic(footprint, h, material);
}

GlintBrdfResult eval_glint_brdf(const grid::Footprint& footprint, const ndf::ShadingFrame& frame,
                                const GlintMaterial& material) {
  const GlintNdfResult d = eval_glint_ndf(footprint, frame, material);
  return {ndf::microfacet_brdf(frame, material.micro, d.value), d.trace};
}

LodProbeResult eval_lod_probe(const Vec2& uv, const ndf::ShadingFrame& frame,
                              const GlintMaterial& material, const LodProbe& probe) {
  const Vec3 h = Basis::from_normal(frame.n).to_local(frame.h);
  const Probability prob = reflect_probability(material, h.z);
  const int res = grid::angular_resolution(material.micro_roughness);
  const auto ax = static_cast<std::int64_t>(std::floor((h.x + 1.0) * 0.5 * res));
  const auto ay = static_cast<std::int64_t>(std::floor((h.y + 1.0) * 0.5 * res));

  const auto level_seed = [&](double level_area) {
    const double side = std::sqrt(level_area);
    const rng::SeedKey key(
        {static_cast<std::int64_t>(material.seed), level_exponent(level_area),
         static_cast<std::int64_t>(std::floor(uv.x / side)),
         static_cast<std::int64_t>(std::floor(uv.y / side)), ax, ay},
        kStreamLodProbe);
    return rng::hash_seed(key);
  };
  const counting::LodPair lods{probe.area_lo, probe.area_hi, level_seed(probe.area_lo),
                               level_seed(probe.area_hi)};

  LodProbeResult out;
  if (probe.blend == LodBlend::distributed) {
    out.count = static_cast<double>(counting::distribute_binomial(
        probe.area, lods, material.density, prob.p, material.sampler));
  } else {
    out.count = counting::blend_binomial_zirr(probe.area, lods, material.density, prob.p,
                                              material.sampler);
  }
  out.value = (prob.d_n / material.ratio) * out.count / (material.density * probe.area);
  return out;
}

}  // namespace glint
