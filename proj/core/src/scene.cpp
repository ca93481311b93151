#include "glint/scene.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

namespace glint::render {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v))
    throw std::invalid_argument("expected a finite number, got '" + text + "'");
  return v;
}

std::int64_t parse_int(const std::string& text) {
  std::int64_t v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw std::invalid_argument("expected an integer, got '" + text + "'");
  return v;
}

std::uint64_t parse_uint(const std::string& text) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw std::invalid_argument("expected an unsigned integer, got '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item)));
  return out;
}

Vec3 parse_vec3(const std::string& text) {
  const auto v = parse_list(text);
  if (v.size() != 3) throw std::invalid_argument("expected x, y, z");
  return {v[0], v[1], v[2]};
}

Rgb parse_rgb(const std::string& text) {
  const auto v = parse_list(text);
  if (v.size() == 1) return {v[0], v[0], v[0]};
  if (v.size() != 3) throw std::invalid_argument("expected one value or r, g, b");
  return {v[0], v[1], v[2]};
}

using Setter = std::function<void(SceneConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"scene.type",
       [](SceneConfig& c, const std::string& v) {
         if (v == "plane") c.scene = SceneType::plane;
         else if (v == "sphere") c.scene = SceneType::sphere;
         else throw std::invalid_argument("expected plane or sphere");
       }},
      {"scene.tilt_deg", [](SceneConfig& c, const std::string& v) { c.tilt_deg = parse_double(v); }},
      {"scene.uv_scale", [](SceneConfig& c, const std::string& v) { c.uv_scale = parse_double(v); }},
      {"scene.sphere_radius",
       [](SceneConfig& c, const std::string& v) { c.sphere_radius = parse_double(v); }},
      {"camera.distance",
       [](SceneConfig& c, const std::string& v) { c.camera_distance = parse_double(v); }},
      {"camera.position",
       [](SceneConfig& c, const std::string& v) { c.camera_position = parse_vec3(v); }},
      {"camera.target", [](SceneConfig& c, const std::string& v) { c.camera_target = parse_vec3(v); }},
      {"camera.fov_deg", [](SceneConfig& c, const std::string& v) { c.fov_deg = parse_double(v); }},
      {"light.position", [](SceneConfig& c, const std::string& v) { c.light_position = parse_vec3(v); }},
      {"light.intensity", [](SceneConfig& c, const std::string& v) { c.light_intensity = parse_rgb(v); }},
      {"material.ndf",
       [](SceneConfig& c, const std::string& v) {
         if (v == "beckmann") c.material.micro.kind = ndf::NdfKind::beckmann;
         else if (v == "ggx") c.material.micro.kind = ndf::NdfKind::ggx;
         else throw std::invalid_argument("expected beckmann or ggx");
       }},
      {"material.alpha", [](SceneConfig& c, const std::string& v) { c.material.micro.alpha = parse_double(v); }},
      {"material.f0", [](SceneConfig& c, const std::string& v) { c.material.micro.f0 = parse_rgb(v); }},
      {"material.R", [](SceneConfig& c, const std::string& v) { c.material.ratio = parse_double(v); }},
      {"material.density", [](SceneConfig& c, const std::string& v) { c.material.density = parse_double(v); }},
      {"material.micro_roughness",
       [](SceneConfig& c, const std::string& v) { c.material.micro_roughness = parse_double(v); }},
      {"material.mode",
       [](SceneConfig& c, const std::string& v) {
         c.smooth = false;
         if (v == "ours") c.material.mode = GlintMode::ours;
         else if (v == "zirr_baseline") c.material.mode = GlintMode::zirr_baseline;
         else if (v == "smooth") c.smooth = true;
         else throw std::invalid_argument("expected ours, zirr_baseline or smooth");
       }},
      {"material.sampler",
       [](SceneConfig& c, const std::string& v) {
         if (v == "gated") c.material.sampler = counting::Sampler::gated;
         else if (v == "reference") c.material.sampler = counting::Sampler::reference;
         else if (v == "classic") c.material.sampler = counting::Sampler::classic;
         else throw std::invalid_argument("expected gated, reference or classic");
       }},
      {"material.max_ratio_level",
       [](SceneConfig& c, const std::string& v) {
         c.material.max_ratio_level = static_cast<int>(parse_int(v));
       }},
      {"image.width", [](SceneConfig& c, const std::string& v) { c.width = static_cast<int>(parse_int(v)); }},
      {"image.height", [](SceneConfig& c, const std::string& v) { c.height = static_cast<int>(parse_int(v)); }},
      {"image.exposure", [](SceneConfig& c, const std::string& v) { c.exposure = parse_double(v); }},
      {"compare.lod_area", [](SceneConfig& c, const std::string& v) { c.compare_lod_area = parse_double(v); }},
      {"compare.density", [](SceneConfig& c, const std::string& v) { c.compare_density = parse_double(v); }},
      {"seed", [](SceneConfig& c, const std::string& v) { c.seed = parse_uint(v); }},
  };
  return table;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt(const Vec3& v) { return fmt(v.x) + ", " + fmt(v.y) + ", " + fmt(v.z); }
std::string fmt(const Rgb& v) { return fmt(v.r) + ", " + fmt(v.g) + ", " + fmt(v.b); }

}  // namespace

void SceneConfig::validate() const {
  const auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError(key + ": " + why);
  };
  if (!(tilt_deg > 0.0 && tilt_deg <= 90.0)) fail("scene.tilt_deg", "must lie in (0, 90]");
  if (!(uv_scale > 0.0)) fail("scene.uv_scale", "must be > 0");
  if (!(sphere_radius > 0.0)) fail("scene.sphere_radius", "must be > 0");
  if (!(camera_distance > 0.0)) fail("camera.distance", "must be > 0");
  if (!(fov_deg > 0.0 && fov_deg < 180.0)) fail("camera.fov_deg", "must lie in (0, 180)");
  if (width < 1 || height < 1 || width > 16384 || height > 16384)
    fail("image.width/height", "must lie in [1, 16384]");
  if (!(exposure > 0.0)) fail("image.exposure", "must be > 0");
  if (!(compare_lod_area > 0.0)) fail("compare.lod_area", "must be > 0");
  if (!(compare_density > 0.0)) fail("compare.density", "must be > 0");
  try {
    material.validate();
  } catch (const std::invalid_argument& e) {
    fail("material", e.what());
  }
}

SceneConfig parse_config(std::istream& in, const std::string& source) {
  SceneConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto where = source + ":" + std::to_string(line_no);
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(where + ": unknown key '" + key + "'");
    try {
      it->second(config, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + key + ": " + e.what());
    }
  }
  config.material.seed = config.seed;
  try {
    config.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return config;
}

SceneConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open");
  return parse_config(in, path.string());
}

std::string serialize(const SceneConfig& c) {
  const auto& m = c.material;
  std::ostringstream os;
  os << "scene.type = " << (c.scene == SceneType::plane ? "plane" : "sphere") << '\n'
     << "scene.tilt_deg = " << fmt(c.tilt_deg) << '\n'
     << "scene.uv_scale = " << fmt(c.uv_scale) << '\n'
     << "scene.sphere_radius = " << fmt(c.sphere_radius) << '\n'
     << "camera.distance = " << fmt(c.camera_distance) << '\n';
  if (c.camera_position) os << "camera.position = " << fmt(*c.camera_position) << '\n';
  os << "camera.target = " << fmt(c.camera_target) << '\n'
     << "camera.fov_deg = " << fmt(c.fov_deg) << '\n'
     << "light.position = " << fmt(c.light_position) << '\n'
     << "light.intensity = " << fmt(c.light_intensity) << '\n'
     << "material.ndf = " << (m.micro.kind == ndf::NdfKind::beckmann ? "beckmann" : "ggx") << '\n'
     << "material.alpha = " << fmt(m.micro.alpha) << '\n'
     << "material.f0 = " << fmt(m.micro.f0) << '\n'
     << "material.R = " << fmt(m.ratio) << '\n'
     << "material.density = " << fmt(m.density) << '\n'
     << "material.micro_roughness = " << fmt(m.micro_roughness) << '\n'
     << "material.mode = "
     << (c.smooth ? "smooth" : m.mode == GlintMode::ours ? "ours" : "zirr_baseline") << '\n'
     << "material.sampler = "
     << (m.sampler == counting::Sampler::gated       ? "gated"
         : m.sampler == counting::Sampler::reference ? "reference"
                                                     : "classic")
     << '\n'
     << "material.max_ratio_level = " << m.max_ratio_level << '\n'
     << "image.width = " << c.width << '\n'
     << "image.height = " << c.height << '\n'
     << "image.exposure = " << fmt(c.exposure) << '\n'
     << "compare.lod_area = " << fmt(c.compare_lod_area) << '\n'
     << "compare.density = " << fmt(c.compare_density) << '\n'
     << "seed = " << c.seed << '\n';
  return os.str();
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t config_hash(const SceneConfig& config) { return fnv1a64(serialize(config)); }

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

Vec3 resolved_camera_position(const SceneConfig& c) {
  if (c.camera_position) return *c.camera_position;
  const double tilt = c.tilt_deg * std::numbers::pi / 180.0;
  return c.camera_target + Vec3{0.0, -std::cos(tilt), std::sin(tilt)} * c.camera_distance;
}

}  // namespace glint::render
