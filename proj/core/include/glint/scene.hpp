#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "glint/glint_brdf.hpp"
#include "glint/vec.hpp"

// Scene description read from a flat `key = value` text file. Lines starting
// with '#' and blank lines are ignored. Vectors and colours are written as
// comma-separated triples; a single number for a colour sets all channels.
//
//   scene.type            plane | sphere
//   scene.tilt_deg        camera elevation above the surface, (0, 90]
//   scene.uv_scale        world units per UV unit
//   scene.sphere_radius
//   camera.distance       used when camera.position is absent
//   camera.position       overrides the tilt placement
//   camera.target
//   camera.fov_deg        vertical field of view
//   light.position
//   light.intensity
//   material.ndf          beckmann | ggx
//   material.alpha
//   material.f0
//   material.R
//   material.density      facets per unit UV area
//   material.micro_roughness
//   material.mode         ours | zirr_baseline | smooth
//   material.sampler      gated | reference | classic
//   material.max_ratio_level
//   image.width, image.height, image.exposure
//   compare.lod_area      texel area of the finer level in the ghosting probe
//   compare.density       facet density used by the ghosting probe
//   seed

namespace glint::render {

enum class SceneType { plane, sphere };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SceneConfig {
  SceneType scene = SceneType::plane;
  double tilt_deg = 90.0;
  double uv_scale = 1.0;
  double sphere_radius = 1.0;

  double camera_distance = 4.0;
  std::optional<Vec3> camera_position;
  Vec3 camera_target{0.0, 0.0, 0.0};
  double fov_deg = 40.0;

  Vec3 light_position{1.0, -1.0, 4.0};
  Rgb light_intensity{16.0, 16.0, 16.0};

  GlintMaterial material;
  bool smooth = false;  ///< render the smooth NDF instead of glints

  int width = 128;
  int height = 128;
  double exposure = 1.0;

  double compare_lod_area = 1e-3;
  double compare_density = 5e3;

  std::uint64_t seed = 0;

  void validate() const;
};

SceneConfig parse_config(std::istream& in, const std::string& source = "<config>");
SceneConfig load_config(const std::filesystem::path& path);

/// Canonical `key = value` text; parse_config(serialize(c)) reproduces c.
std::string serialize(const SceneConfig& config);

/// FNV-1a 64 of arbitrary text.
std::uint64_t fnv1a64(std::string_view text);

/// FNV-1a 64 of serialize(config).
std::uint64_t config_hash(const SceneConfig& config);
std::string hex64(std::uint64_t v);

/// Camera placed from tilt_deg and distance unless camera_position is set.
Vec3 resolved_camera_position(const SceneConfig& config);

}  // namespace glint::render
