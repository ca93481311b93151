#include "glint/render.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace glint::render {

namespace {

std::uint8_t encode_channel(double v, double exposure) {
  const double c = std::clamp(v * exposure, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(std::pow(c, 1.0 / 2.2) * 255.0));
}

struct Intersection {
  double t = 0.0;
  Vec3 position;
  Vec3 normal;
};

std::optional<Intersection> intersect(const SceneConfig& c, const Vec3& o, const Vec3& d) {
  if (c.scene == SceneType::plane) {
    if (std::abs(d.z) < 1e-300) return std::nullopt;
    const double t = -o.z / d.z;
    if (!(t > 0.0)) return std::nullopt;
    return Intersection{t, o + d * t, {0.0, 0.0, 1.0}};
  }
  // |o + t d|^2 = r^2, nearest positive root
  const double a = dot(d, d);
  const double b = dot(o, d);
  const double cc = dot(o, o) - c.sphere_radius * c.sphere_radius;
  const double disc = b * b - a * cc;
  if (disc < 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  double t = (-b - sq) / a;
  if (!(t > 0.0)) t = (-b + sq) / a;
  if (!(t > 0.0)) return std::nullopt;
  const Vec3 p = o + d * t;
  return Intersection{t, p, normalize(p)};
}

// UV and its gradient with respect to world position, plus the tangent
// along increasing u.
struct Parameterization {
  Vec2 uv;
  Vec3 grad_u;
  Vec3 grad_v;
  Vec3 tangent;
};

Parameterization parameterize(const SceneConfig& c, const Intersection& hit) {
  const double inv = 1.0 / c.uv_scale;
  if (c.scene == SceneType::plane) {
    return {{hit.position.x * inv, hit.position.y * inv}, {inv, 0.0, 0.0}, {0.0, inv, 0.0},
            {1.0, 0.0, 0.0}};
  }
  // Longitude seam on the far side (+y) so the camera-facing hemisphere is
  // continuous; latitude from the +z pole.
  const double r = c.sphere_radius;
  const Vec3 q = hit.normal;
  const double rho2 = q.x * q.x + q.y * q.y;
  const double two_pi = 2.0 * std::numbers::pi;
  Parameterization out;
  out.uv = {std::atan2(q.x, -q.y) / two_pi * inv,
            std::acos(std::clamp(q.z, -1.0, 1.0)) / std::numbers::pi * inv};
  if (rho2 < 1e-24) {
    out.grad_u = {};
    out.grad_v = {};
    out.tangent = {1.0, 0.0, 0.0};
    return out;
  }
  out.grad_u = Vec3{-q.y, q.x, 0.0} * (inv / (two_pi * r * rho2));
  const Vec3 dqz = (Vec3{0.0, 0.0, 1.0} - q * q.z) / r;
  out.grad_v = dqz * (-inv / (std::numbers::pi * std::sqrt(rho2)));
  out.tangent = normalize(Vec3{-q.y, q.x, 0.0});
  return out;
}

}  // namespace

CameraRig CameraRig::from_config(const SceneConfig& c) {
  CameraRig rig;
  rig.position = resolved_camera_position(c);
  rig.width = c.width;
  rig.height = c.height;
  rig.forward = normalize(c.camera_target - rig.position);
  Vec3 hint{0.0, 0.0, 1.0};
  if (length(cross(rig.forward, hint)) < 1e-6) hint = {0.0, 1.0, 0.0};
  const Vec3 right = normalize(cross(rig.forward, hint));
  const Vec3 up = cross(right, rig.forward);
  const double half = std::tan(c.fov_deg * std::numbers::pi / 360.0);
  const double aspect = static_cast<double>(c.width) / c.height;
  rig.right = right * (2.0 * half * aspect / c.width);
  rig.up = up * (2.0 * half / c.height);
  return rig;
}

Vec3 CameraRig::direction(double px, double py) const {
  return forward + right * (px - 0.5 * width) + up * (0.5 * height - py);
}

std::optional<SurfaceHit> trace_primary(const SceneConfig& c, const CameraRig& cam, int x, int y) {
  const Vec3 d = cam.direction(x + 0.5, y + 0.5);
  const auto isect = intersect(c, cam.position, d);
  if (!isect) return std::nullopt;
  const Vec3& n = isect->normal;
  const double dn = dot(d, n);
  if (std::abs(dn) < 1e-300) return std::nullopt;

  // Transfer of the ray differentials to the tangent plane at the hit.
  const auto transfer = [&](const Vec3& dd) {
    const double dt = -isect->t * dot(dd, n) / dn;
    return dd * isect->t + d * dt;
  };
  const Vec3 dp_dx = transfer(cam.right);
  const Vec3 dp_dy = transfer(-cam.up);

  const Parameterization param = parameterize(c, *isect);
  SurfaceHit hit;
  hit.position = isect->position;
  const Vec3 t = normalize(param.tangent - n * dot(param.tangent, n));
  hit.frame = {t, cross(n, t), n};
  hit.uv = param.uv;
  hit.duv_dx = {dot(param.grad_u, dp_dx), dot(param.grad_v, dp_dx)};
  hit.duv_dy = {dot(param.grad_u, dp_dy), dot(param.grad_v, dp_dy)};
  hit.wi_local = hit.frame.to_local(normalize(cam.position - hit.position));
  const Vec3 to_light = c.light_position - hit.position;
  hit.light_distance2 = dot(to_light, to_light);
  hit.wo_local = hit.frame.to_local(normalize(to_light));
  return hit;
}

std::optional<grid::Footprint> hit_footprint(const SurfaceHit& hit) {
  try {
    return grid::footprint_from_derivatives(hit.duv_dx, hit.duv_dy, hit.uv);
  } catch (const grid::DegenerateFootprint&) {
    return std::nullopt;
  }
}

void parallel_rows(int rows, int threads, const std::function<void(int)>& fn) {
  const int workers = std::clamp(threads, 1, std::max(1, rows));
  if (workers == 1) {
    for (int y = 0; y < rows; ++y) fn(y);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int y = next++; y < rows; y = next++) fn(y);
    });
}

RenderOutput render(const SceneConfig& c, int threads) {
  RenderOutput out;
  out.image = Image(c.width, c.height);
  out.traces.assign(out.image.pixels.size(), {});
  const CameraRig cam = CameraRig::from_config(c);
  const Vec3 n_local{0.0, 0.0, 1.0};

  parallel_rows(c.height, threads, [&](int y) {
    for (int x = 0; x < c.width; ++x) {
      const auto hit = trace_primary(c, cam, x, y);
      if (!hit) continue;
      PixelTrace& trace = out.traces[static_cast<std::size_t>(y) * c.width + x];
      trace.hit = true;
      if (hit->wi_local.z <= 0.0 || hit->wo_local.z <= 0.0) continue;
      const auto frame = ndf::ShadingFrame::make(n_local, hit->wi_local, hit->wo_local);
      Rgb f;
      const auto fp = c.smooth ? std::nullopt : hit_footprint(*hit);
      if (fp) {
        const GlintBrdfResult g = eval_glint_brdf(*fp, frame, c.material);
        f = g.value;
        trace.eval = g.trace;
      } else {
        f = ndf::smooth_brdf(frame, c.material.micro);
        trace.eval.clamped = !c.smooth;
      }
      out.image.at(x, y) = f * c.light_intensity * (hit->wo_local.z / hit->light_distance2);
    }
  });
  return out;
}

void write_ppm(std::ostream& out, const Image& image, double exposure) {
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  std::vector<std::uint8_t> row(static_cast<std::size_t>(image.width) * 3);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const Rgb& p = image.at(x, y);
      row[3 * x + 0] = encode_channel(p.r, exposure);
      row[3 * x + 1] = encode_channel(p.g, exposure);
      row[3 * x + 2] = encode_channel(p.b, exposure);
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
}

void write_ppm(const std::filesystem::path& path, const Image& image, double exposure) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  write_ppm(out, image, exposure);
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

Ppm8 read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::string magic;
  int maxval = 0;
  Ppm8 img;
  in >> magic >> img.width >> img.height >> maxval;
  if (!in || magic != "P6" || maxval != 255 || img.width < 1 || img.height < 1)
    throw std::runtime_error(path.string() + ": not an 8-bit P6 image");
  in.get();
  img.data.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  in.read(reinterpret_cast<char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
  if (!in) throw std::runtime_error(path.string() + ": truncated pixel data");
  return img;
}

void write_trace_csv(std::ostream& out, const RenderOutput& output) {
  out << "x,y,hit,binomial_calls,anisotropy_used,clamped,tetrahedron,r,g,b\n";
  const Image& img = output.image;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      const PixelTrace& t = output.traces[static_cast<std::size_t>(y) * img.width + x];
      const Rgb& p = img.at(x, y);
      out << x << ',' << y << ',' << t.hit << ',' << t.eval.binomial_calls << ','
          << t.eval.anisotropy_used << ',' << t.eval.clamped << ',' << t.eval.tetrahedron << ','
          << p.r << ',' << p.g << ',' << p.b << '\n';
    }
}

}  // namespace glint::render
