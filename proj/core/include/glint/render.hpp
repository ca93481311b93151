#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "glint/aniso_grid.hpp"
#include "glint/glint_brdf.hpp"
#include "glint/scene.hpp"
#include "glint/vec.hpp"

// CPU path: one primary ray per pixel, analytic ray differentials, a single
// punctual light and no secondary bounces.

namespace glint::render {

struct Image {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;  ///< linear radiance, row-major from the top

  Image() = default;
  Image(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h) {}
  Rgb& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  const Rgb& at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

struct CameraRig {
  Vec3 position;
  Vec3 forward;
  Vec3 right;  ///< scaled so that one pixel step in x moves the direction by `right`
  Vec3 up;     ///< scaled likewise for a pixel step in -y
  int width = 0;
  int height = 0;

  static CameraRig from_config(const SceneConfig& config);

  /// Unnormalized direction through continuous pixel coordinates.
  Vec3 direction(double px, double py) const;
};

/// Shading inputs at the first surface hit of a pixel's primary ray.
struct SurfaceHit {
  Vec3 position;
  Basis frame;     ///< tangent frame, t along dP/du
  Vec2 uv;
  Vec2 duv_dx;     ///< UV change per pixel step in x
  Vec2 duv_dy;     ///< UV change per pixel step in y
  Vec3 wi_local;   ///< towards the camera
  Vec3 wo_local;   ///< towards the light
  double light_distance2 = 0.0;
};

std::optional<SurfaceHit> trace_primary(const SceneConfig& config, const CameraRig& camera,
                                        int x, int y);

struct PixelTrace {
  bool hit = false;
  EvalTrace eval;
};

struct RenderOutput {
  Image image;
  std::vector<PixelTrace> traces;
};

/// Calls fn(y) once for every row in [0, rows) on `threads` workers.
void parallel_rows(int rows, int threads, const std::function<void(int)>& fn);

/// Renders config with the material in config.material (or the smooth NDF
/// when config.smooth). Output does not depend on the thread count.
RenderOutput render(const SceneConfig& config, int threads = 1);

/// Footprint of a hit, or nullopt when the UV Jacobian is singular.
std::optional<grid::Footprint> hit_footprint(const SurfaceHit& hit);

/// Binary PPM (P6) with 8-bit channels: clamp(exposure * L, 0, 1)^(1/2.2).
void write_ppm(std::ostream& out, const Image& image, double exposure = 1.0);
void write_ppm(const std::filesystem::path& path, const Image& image, double exposure = 1.0);

/// Reads back a P6 file written by write_ppm() as 8-bit samples.
struct Ppm8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;
};
Ppm8 read_ppm(const std::filesystem::path& path);

/// x,y,hit,binomial_calls,anisotropy_used,clamped,tetrahedron,r,g,b
void write_trace_csv(std::ostream& out, const RenderOutput& output);

}  // namespace glint::render
