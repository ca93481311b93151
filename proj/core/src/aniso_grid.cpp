#include "glint/aniso_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace glint::grid {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double angle) {
  double a = std::fmod(angle, kPi);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a = 0.0;
  return a;
}

int wrap_index(int index, int count) { return ((index % count) + count) % count; }

// Planar vertex of the (ratio, orientation) lattice plus its position in
// local cell coordinates.
struct PlanarVertex {
  int r_level;
  int phi_index;
  double a;
  double b;

  bool precedes(const PlanarVertex& o) const {
    return r_level != o.r_level ? r_level < o.r_level : phi_index < o.phi_index;
  }
};

struct Pentagon {
  PlanarVertex inner0, inner1, outer0, outer_mid, outer1;

  std::array<PlanarVertex, 3> triangle(int t) const {
    switch (t) {
      case 0: return {inner0, outer0, outer_mid};
      case 1: return {inner0, outer_mid, outer1};
      default: return {inner0, outer1, inner1};
    }
  }
};

Pentagon make_pentagon(int k, int j) {
  const int inner = 1 << k;
  const int outer = inner << 1;
  return {{k, wrap_index(j, inner), 0.0, 0.0},
          {k, wrap_index(j + 1, inner), 0.0, 1.0},
          {k + 1, wrap_index(2 * j, outer), 1.0, 0.0},
          {k + 1, wrap_index(2 * j + 1, outer), 1.0, 0.5},
          {k + 1, wrap_index(2 * j + 2, outer), 1.0, 1.0}};
}

// Triangles fan out of inner0 = (0, 0): t0 below b = a/2, t1 between
// b = a/2 and b = a, t2 above b = a.
int fan_triangle(double a, double b) {
  if (b <= 0.5 * a) return 0;
  if (b <= a) return 1;
  return 2;
}

std::array<double, 3> barycentric(const std::array<PlanarVertex, 3>& tri, double a, double b) {
  const Vec2 p0{tri[0].a, tri[0].b};
  const Vec2 e1 = Vec2{tri[1].a, tri[1].b} - p0;
  const Vec2 e2 = Vec2{tri[2].a, tri[2].b} - p0;
  const Vec2 q = Vec2{a, b} - p0;
  const double det = cross(e1, e2);
  const double l1 = cross(q, e2) / det;
  const double l2 = cross(e1, q) / det;
  return {1.0 - l1 - l2, l1, l2};
}

// Sorts the triangle by the global vertex order so that shared prism faces
// use the same diagonal in every cell.
void sort_triangle(std::array<PlanarVertex, 3>& tri, std::array<double, 3>& lambda) {
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k + 1 < 3 - i; ++k)
      if (tri[k + 1].precedes(tri[k])) {
        std::swap(tri[k], tri[k + 1]);
        std::swap(lambda[k], lambda[k + 1]);
      }
}

}  // namespace

Footprint footprint_from_derivatives(const Vec2& duv_dx, const Vec2& duv_dy, const Vec2& center) {
  const double det = cross(duv_dx, duv_dy);
  const double p = dot(Vec2{duv_dx.x, duv_dy.x}, Vec2{duv_dx.x, duv_dy.x});
  const double q = dot(Vec2{duv_dx.y, duv_dy.y}, Vec2{duv_dx.y, duv_dy.y});
  const double r = duv_dx.x * duv_dx.y + duv_dy.x * duv_dy.y;
  const double half_sum = 0.5 * (p + q);
  const double radius = std::hypot(0.5 * (p - q), r);
  const double sigma0 = std::sqrt(half_sum + radius);
  if (!std::isfinite(det) || !std::isfinite(sigma0) || sigma0 == 0.0 ||
      std::abs(det) <= 1e-12 * sigma0 * sigma0)
    throw DegenerateFootprint("footprint_from_derivatives: singular UV Jacobian");
  const double sigma1 = std::abs(det) / sigma0;
  const double theta = 0.5 * std::atan2(2.0 * r, p - q);
  const Vec2 major{std::cos(theta), std::sin(theta)};
  const Vec2 minor{-major.y, major.x};

  Footprint fp;
  fp.center = center;
  fp.v0 = major * sigma0;
  fp.v1 = minor * sigma1;
  fp.area = sigma0 * sigma1;
  fp.ratio = sigma0 / sigma1;
  fp.phi = wrap_pi(theta);
  return fp;
}

Footprint make_footprint(const Vec2& center, double minor_length, double ratio, double phi) {
  if (!(minor_length > 0.0) || !(ratio >= 1.0))
    throw DegenerateFootprint("make_footprint: need minor_length > 0 and ratio >= 1");
  const Vec2 major{std::cos(phi), std::sin(phi)};
  Footprint fp;
  fp.center = center;
  fp.v0 = major * (minor_length * ratio);
  fp.v1 = Vec2{-major.y, major.x} * minor_length;
  fp.area = minor_length * minor_length * ratio;
  fp.ratio = ratio;
  fp.phi = wrap_pi(phi);
  return fp;
}

ScaleBracket enclose_scale(double area) {
  if (!(area > 0.0) || !std::isfinite(area))
    throw std::invalid_argument("enclose_scale: area must be positive and finite");
  int e = 0;
  const double m = std::frexp(area, &e);
  if (m == 0.5) return {area, area};
  return {std::ldexp(1.0, e - 1), std::ldexp(1.0, e)};
}

double vertex_angle(const GridVertex& v) {
  return std::ldexp(kPi * static_cast<double>(v.phi_index), -v.r_level);
}

double texel_area(const GridVertex& v) { return std::ldexp(1.0, 2 * v.s_level + v.r_level); }

Vec2 transform_uv(const Vec2& uv, const GridVertex& v) {
  const double angle = vertex_angle(v);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Vec2 aligned{c * uv.x + s * uv.y, -s * uv.x + c * uv.y};
  return {std::ldexp(aligned.x, -(v.s_level + v.r_level)), std::ldexp(aligned.y, -v.s_level)};
}

Vec2 inverse_transform_uv(const Vec2& grid, const GridVertex& v) {
  const double angle = vertex_angle(v);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Vec2 aligned{std::ldexp(grid.x, v.s_level + v.r_level), std::ldexp(grid.y, v.s_level)};
  return {c * aligned.x - s * aligned.y, s * aligned.x + c * aligned.y};
}

LatticeCoords lattice_coords(const Footprint& fp) {
  return {std::log2(length(fp.v1)), std::log2(std::max(fp.ratio, 1.0)), wrap_pi(fp.phi)};
}

TetraWeights locate_tetrahedron(const LatticeCoords& coords, const GridConfig& config) {
  if (config.max_ratio_level < 1)
    throw std::invalid_argument("GridConfig: max_ratio_level must be >= 1");
  TetraWeights out;

  double rho = std::max(coords.rho, 0.0);
  if (rho > config.max_ratio_level) {
    rho = config.max_ratio_level;
    out.clamped = true;
  }
  out.ratio_used = std::exp2(rho);

  const double s_floor = std::floor(coords.s);
  const int s0 = static_cast<int>(s_floor);
  const double t = coords.s - s_floor;

  const int k = std::min(static_cast<int>(std::floor(rho)), config.max_ratio_level - 1);
  const double a = rho - k;
  const int ring = 1 << k;
  const double x = wrap_pi(coords.phi) / (kPi / ring);
  const int j = std::min(static_cast<int>(std::floor(x)), ring - 1);
  const double b = std::clamp(x - j, 0.0, 1.0);

  const Pentagon pentagon = make_pentagon(k, j);
  const int tri_index = fan_triangle(a, b);
  std::array<PlanarVertex, 3> tri = pentagon.triangle(tri_index);
  std::array<double, 3> lambda = barycentric(tri, a, b);
  for (double& l : lambda) l = std::max(l, 0.0);
  sort_triangle(tri, lambda);

  // Staircase split of the prism over the sorted triangle (A, B, C).
  const auto at = [&](int i, int level) {
    return GridVertex{s0 + level, tri[i].r_level, tri[i].phi_index};
  };
  int sub = 0;
  if (t <= lambda[2]) {
    out.vertices = {at(0, 0), at(1, 0), at(2, 0), at(2, 1)};
    out.weights = {lambda[0], lambda[1], lambda[2] - t, t};
  } else if (t <= lambda[1] + lambda[2]) {
    sub = 1;
    out.vertices = {at(0, 0), at(1, 0), at(1, 1), at(2, 1)};
    out.weights = {lambda[0], lambda[1] + lambda[2] - t, t - lambda[2], lambda[2]};
  } else {
    sub = 2;
    out.vertices = {at(0, 0), at(0, 1), at(1, 1), at(2, 1)};
    out.weights = {1.0 - t, t - lambda[1] - lambda[2], lambda[1], lambda[2]};
  }
  out.tetrahedron = 3 * tri_index + sub;

  double total = 0.0;
  for (double& w : out.weights) {
    w = std::max(w, 0.0);
    total += w;
  }
  for (double& w : out.weights) w /= total;
  for (int i = 0; i < 4; ++i)
    for (int m = i + 1; m < 4; ++m)
      if (out.weights[m] != 0.0 && out.vertices[m] == out.vertices[i]) {
        out.weights[i] += out.weights[m];
        out.weights[m] = 0.0;
      }
  return out;
}

TetraWeights locate_tetrahedron(const Footprint& fp, const GridConfig& config) {
  return locate_tetrahedron(lattice_coords(fp), config);
}

std::array<CellTetrahedron, 9> cell_tetrahedra(int s0, int k, int j) {
  const Pentagon pentagon = make_pentagon(k, j);
  std::array<CellTetrahedron, 9> out{};
  for (int tri_index = 0; tri_index < 3; ++tri_index) {
    std::array<PlanarVertex, 3> tri = pentagon.triangle(tri_index);
    std::array<double, 3> unused{};
    sort_triangle(tri, unused);
    const auto corner = [&](int i, int level) {
      return std::array<double, 3>{tri[i].a, tri[i].b, static_cast<double>(level)};
    };
    const auto vertex = [&](int i, int level) {
      return GridVertex{s0 + level, tri[i].r_level, tri[i].phi_index};
    };
    const int pattern[3][4][2] = {{{0, 0}, {1, 0}, {2, 0}, {2, 1}},
                                  {{0, 0}, {1, 0}, {1, 1}, {2, 1}},
                                  {{0, 0}, {0, 1}, {1, 1}, {2, 1}}};
    for (int sub = 0; sub < 3; ++sub) {
      CellTetrahedron& tet = out[3 * tri_index + sub];
      for (int c = 0; c < 4; ++c) {
        tet.corners[c] = corner(pattern[sub][c][0], pattern[sub][c][1]);
        tet.vertices[c] = vertex(pattern[sub][c][0], pattern[sub][c][1]);
      }
    }
  }
  return out;
}

namespace {
const double kSkew = 0.5 * (std::sqrt(3.0) - 1.0);
const double kUnskew = (3.0 - std::sqrt(3.0)) / 6.0;
}  // namespace

SpatialSimplexSample simplex_sample(const Vec2& uv_prime) {
  const double skew = (uv_prime.x + uv_prime.y) * kSkew;
  const double xs = uv_prime.x + skew;
  const double ys = uv_prime.y + skew;
  const double fi = std::floor(xs);
  const double fj = std::floor(ys);
  const auto i = static_cast<std::int64_t>(fi);
  const auto j = static_cast<std::int64_t>(fj);
  const double fx = xs - fi;
  const double fy = ys - fj;

  SpatialSimplexSample out;
  if (fx >= fy) {
    out.vertex_keys = {{{i, j}, {i + 1, j}, {i + 1, j + 1}}};
    out.weights = {1.0 - fx, fx - fy, fy};
  } else {
    out.vertex_keys = {{{i, j}, {i, j + 1}, {i + 1, j + 1}}};
    out.weights = {1.0 - fy, fy - fx, fx};
  }
  return out;
}

Vec2 simplex_vertex_position(std::int64_t i, std::int64_t j) {
  const double unskew = static_cast<double>(i + j) * kUnskew;
  return {static_cast<double>(i) - unskew, static_cast<double>(j) - unskew};
}

int angular_resolution(double micro_roughness) {
  if (!(micro_roughness > 0.0))
    throw std::invalid_argument("angular_resolution: micro_roughness must be > 0");
  return static_cast<int>(std::ceil(2.0 / micro_roughness));
}

AngularSample angular_sample(const Vec3& h_local, double micro_roughness) {
  if (!(h_local.z > 0.0))
    throw std::invalid_argument("angular_sample: half-vector below the surface");
  AngularSample out;
  out.resolution = angular_resolution(micro_roughness);
  const double cells_per_unit = 0.5 * out.resolution;
  const double gx = (h_local.x + 1.0) * cells_per_unit - 0.5;
  const double gy = (h_local.y + 1.0) * cells_per_unit - 0.5;
  const double fx0 = std::floor(gx);
  const double fy0 = std::floor(gy);
  const double fx = gx - fx0;
  const double fy = gy - fy0;
  const auto x0 = static_cast<std::int64_t>(fx0);
  const auto y0 = static_cast<std::int64_t>(fy0);
  out.cell_keys = {{{x0, y0}, {x0 + 1, y0}, {x0, y0 + 1}, {x0 + 1, y0 + 1}}};
  out.weights = {(1.0 - fx) * (1.0 - fy), fx * (1.0 - fy), (1.0 - fx) * fy, fx * fy};
  return out;
}

}  // namespace glint::grid
