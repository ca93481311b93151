#pragma once

#include <cstdint>

#include "glint/aniso_grid.hpp"
#include "glint/counting.hpp"
#include "glint/ndf.hpp"
#include "glint/vec.hpp"

namespace glint {

enum class GlintMode {
  ours,           ///< anisotropic grids, tetrahedral + simplex + angular stages
  zirr_baseline,  ///< axis-aligned mip grids, texel loop, output mixing
};

struct GlintMaterial {
  ndf::MicrofacetParams micro;
  double ratio = 0.1;             ///< R in (0, 1]
  double density = 1e5;           ///< facets per unit UV area
  double micro_roughness = 0.05;  ///< angular cell size on the projected disk
  GlintMode mode = GlintMode::ours;
  counting::Sampler sampler = counting::Sampler::gated;
  counting::Sampler baseline_sampler = counting::Sampler::classic;
  std::uint64_t seed = 0;
  int max_ratio_level = 8;
  int baseline_max_anisotropy = 16;

  void validate() const;
};

/// Binomial evaluations per pixel in GlintMode::ours:
/// 4 tetrahedron vertices x 3 simplex vertices x 4 angular cells.
inline constexpr int kBinomialCallsPerPixel = 48;

struct EvalTrace {
  int binomial_calls = 0;
  double anisotropy_used = 1.0;
  bool clamped = false;  ///< footprint ratio or probability clamped
  int tetrahedron = -1;
};

struct GlintNdfResult {
  double value = 0.0;
  EvalTrace trace;
};

struct GlintBrdfResult {
  Rgb value;
  EvalTrace trace;
};

/// Stochastic NDF D_P(h) over a pixel footprint. The frame may be given in
/// any space; the angular grid is indexed in the tangent frame built from
/// frame.n, so renderers pass tangent-space frames (n = +z, x = dP/du).
GlintNdfResult eval_glint_ndf(const grid::Footprint& footprint, const ndf::ShadingFrame& frame,
                              const GlintMaterial& material);

GlintBrdfResult eval_glint_brdf(const grid::Footprint& footprint, const ndf::ShadingFrame& frame,
                                const GlintMaterial& material);

enum class LodBlend {
  distributed,  ///< split the law over both levels
  output_mix,   ///< mix the two counts
};

/// Isotropic two-level probe used by the ghosting comparison: nearest
/// texel at each level, nearest angular cell, no spatial interpolation.
struct LodProbe {
  double area_lo = 1.0;
  double area_hi = 2.0;
  double area = 1.0;
  LodBlend blend = LodBlend::distributed;
};

struct LodProbeResult {
  double count = 0.0;  ///< glint count in the footprint (fractional for output_mix)
  double value = 0.0;  ///< NDF value (d_n / R) * count / (density * area)
};

LodProbeResult eval_lod_probe(const Vec2& uv, const ndf::ShadingFrame& frame,
                              const GlintMaterial& material, const LodProbe& probe);

}  // namespace glint
