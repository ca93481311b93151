#include "glint/ndf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace glint::ndf {

void MicrofacetParams::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("MicrofacetParams: alpha must be > 0");
  for (double c : {f0.r, f0.g, f0.b})
    if (!(c >= 0.0 && c <= 1.0))
      throw std::invalid_argument("MicrofacetParams: f0 channels must lie in [0, 1]");
}

ShadingFrame ShadingFrame::make(const Vec3& n, const Vec3& wi, const Vec3& wo) {
  const Vec3 sum = wi + wo;
  const double len = length(sum);
  if (!(dot(n, wi) > 0.0) || !(dot(n, wo) > 0.0) || !(len > 0.0))
    throw std::invalid_argument("ShadingFrame: directions must lie above the surface");
  return {n, wi, wo, sum / len};
}

double ndf_d(NdfKind kind, double alpha, double cos_theta_h) {
  if (!(alpha > 0.0)) throw std::invalid_argument("ndf_d: alpha must be > 0");
  const double c = std::clamp(cos_theta_h, 0.0, 1.0);
  const double a2 = alpha * alpha;
  const double c2 = c * c;
  switch (kind) {
    case NdfKind::beckmann: {
      if (c2 == 0.0) return 0.0;
      const double tan2 = (1.0 - c2) / c2;
      return std::exp(-tan2 / a2) / (std::numbers::pi * a2 * c2 * c2);
    }
    case NdfKind::ggx: {
      const double denom = c2 * (a2 - 1.0) + 1.0;
      return a2 / (std::numbers::pi * denom * denom);
    }
  }
  return 0.0;
}

double smith_lambda(NdfKind kind, double alpha, double cos_theta) {
  const double c = std::clamp(cos_theta, 0.0, 1.0);
  if (c == 0.0) return INFINITY;
  const double tan2 = std::max(0.0, (1.0 - c * c) / (c * c));
  if (tan2 == 0.0) return 0.0;
  switch (kind) {
    case NdfKind::beckmann: {
      const double a = 1.0 / (alpha * std::sqrt(tan2));
      if (a >= 1.6) return 0.0;
      return std::max(0.0, (1.0 - 1.259 * a + 0.396 * a * a) / (3.535 * a + 2.181 * a * a));
    }
    case NdfKind::ggx:
      return 0.5 * (std::sqrt(1.0 + alpha * alpha * tan2) - 1.0);
  }
  return 0.0;
}

double smith_g(NdfKind kind, double alpha, const ShadingFrame& frame) {
  const double ci = dot(frame.n, frame.wi);
  const double co = dot(frame.n, frame.wo);
  if (ci <= 0.0 || co <= 0.0) return 0.0;
  return 1.0 / (1.0 + smith_lambda(kind, alpha, ci) + smith_lambda(kind, alpha, co));
}

Rgb fresnel_schlick(double cos_theta, const Rgb& f0) {
  const double m = 1.0 - std::clamp(cos_theta, 0.0, 1.0);
  const double m5 = m * m * m * m * m;
  return {f0.r + (1.0 - f0.r) * m5, f0.g + (1.0 - f0.g) * m5, f0.b + (1.0 - f0.b) * m5};
}

Rgb microfacet_brdf(const ShadingFrame& frame, const MicrofacetParams& params, double d_value) {
  const double ci = dot(frame.n, frame.wi);
  const double co = dot(frame.n, frame.wo);
  if (!(ci > 0.0) || !(co > 0.0)) throw std::invalid_argument("microfacet_brdf: degenerate frame");
  if (!(d_value >= 0.0)) throw std::invalid_argument("microfacet_brdf: d_value must be >= 0");
  if (d_value == 0.0) return {};
  const Rgb f = fresnel_schlick(dot(frame.wi, frame.h), params.f0);
  const double g = smith_g(params.kind, params.alpha, frame);
  return f * (g * d_value / (4.0 * ci * co));
}

Rgb smooth_brdf(const ShadingFrame& frame, const MicrofacetParams& params) {
  return microfacet_brdf(frame, params, ndf_d(params.kind, params.alpha, dot(frame.n, frame.h)));
}

}  // namespace glint::ndf
