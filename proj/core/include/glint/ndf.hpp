#pragma once

#include "glint/vec.hpp"

// Smooth microfacet ingredients around the (possibly stochastic) NDF value.
//
// Naming follows the glint model: wi is the view direction and wo the light
// direction, both pointing away from the surface.

namespace glint::ndf {

enum class NdfKind { beckmann, ggx };

struct MicrofacetParams {
  NdfKind kind = NdfKind::beckmann;
  double alpha = 1.0;
  Rgb f0{0.04, 0.04, 0.04};

  void validate() const;
};

struct ShadingFrame {
  Vec3 n;
  Vec3 wi;
  Vec3 wo;
  Vec3 h;

  /// Builds the half-vector and checks that both directions lie in the
  /// upper hemisphere. Throws std::invalid_argument on degenerate input.
  static ShadingFrame make(const Vec3& n, const Vec3& wi, const Vec3& wo);
};

/// Isotropic NDF value for a half-vector at cos_theta_h from the normal.
/// Beckmann at cos_theta_h == 0 returns the limit 0.
double ndf_d(NdfKind kind, double alpha, double cos_theta_h);

/// Smith Lambda for a direction at cos_theta from the normal. Beckmann uses
/// Walter's rational fit, GGX the exact form.
double smith_lambda(NdfKind kind, double alpha, double cos_theta);

/// Height-correlated masking-shadowing 1 / (1 + Lambda(wi) + Lambda(wo)).
double smith_g(NdfKind kind, double alpha, const ShadingFrame& frame);

Rgb fresnel_schlick(double cos_theta, const Rgb& f0);

/// F(wi.h) G D / (4 (wi.n) (wo.n)) per channel.
Rgb microfacet_brdf(const ShadingFrame& frame, const MicrofacetParams& params, double d_value);

/// microfacet_brdf() with the smooth NDF.
Rgb smooth_brdf(const ShadingFrame& frame, const MicrofacetParams& params);

}  // namespace glint::ndf
