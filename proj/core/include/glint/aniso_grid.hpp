#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>

#include "glint/vec.hpp"

// Virtual grid parameterizations of UV space.
//
// A grid vertex is a discrete (scale, ratio, orientation) triple. Its texels
// are rectangles of minor side 2^s and major side 2^(s + r), with the major
// side rotated to angle phi_index * pi / 2^r. Orientation vertices are nested:
// ratio level r carries 2^r orientations and level r + 1 adds the midpoints,
// so one lattice cell in (log2 ratio, orientation) is a pentagon with two
// inner and three outer vertices. Each pentagon is fanned into 3 triangles
// and each triangular prism along the scale axis into 3 tetrahedra.

namespace glint::grid {

struct Footprint {
  Vec2 center;
  Vec2 v0;  ///< major axis
  Vec2 v1;  ///< minor axis
  double area = 0.0;   ///< |v0| * |v1|, the area of the projected pixel
  double ratio = 1.0;  ///< |v0| / |v1|
  double phi = 0.0;    ///< atan2(v0.y, v0.x) mod pi
};

class DegenerateFootprint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Ellipse axes of the image of the unit pixel under the UV Jacobian with
/// columns duv_dx, duv_dy (singular vectors scaled by singular values).
Footprint footprint_from_derivatives(const Vec2& duv_dx, const Vec2& duv_dy,
                                     const Vec2& center = {});

/// Footprint with the given minor axis length, anisotropy and orientation.
Footprint make_footprint(const Vec2& center, double minor_length, double ratio, double phi);

struct ScaleBracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Powers of two around `area`; lo == hi when area is itself a power of two.
ScaleBracket enclose_scale(double area);

struct GridVertex {
  int s_level = 0;
  int r_level = 0;
  int phi_index = 0;

  auto operator<=>(const GridVertex&) const = default;
};

double vertex_angle(const GridVertex& v);
double texel_area(const GridVertex& v);

/// Grid-space coordinates: rotate by -vertex_angle, then divide the major
/// axis by 2^(s + r) and the minor axis by 2^s.
Vec2 transform_uv(const Vec2& uv, const GridVertex& v);
Vec2 inverse_transform_uv(const Vec2& grid, const GridVertex& v);

struct GridConfig {
  int max_ratio_level = 8;
};

/// Continuous position of a footprint in the lattice: s = log2 |v1|,
/// rho = log2 ratio, phi in [0, pi).
struct LatticeCoords {
  double s = 0.0;
  double rho = 0.0;
  double phi = 0.0;
};

LatticeCoords lattice_coords(const Footprint& fp);

struct TetraWeights {
  std::array<GridVertex, 4> vertices{};
  std::array<double, 4> weights{};
  int tetrahedron = 0;  ///< 0..8 within the cell
  bool clamped = false;
  double ratio_used = 1.0;
};

/// Barycentric weights of the enclosing tetrahedron. Repeated vertices
/// (the r = 0 ring has a single orientation) are merged into the first slot,
/// leaving weight 0 in the others.
TetraWeights locate_tetrahedron(const LatticeCoords& coords, const GridConfig& config = {});
TetraWeights locate_tetrahedron(const Footprint& fp, const GridConfig& config = {});

/// One of the 9 tetrahedra of a cell, in local cell coordinates
/// (ratio fraction, orientation fraction, scale fraction).
struct CellTetrahedron {
  std::array<std::array<double, 3>, 4> corners{};
  std::array<GridVertex, 4> vertices{};
};

/// Cell with base scale s0, ratio level k and orientation index j.
std::array<CellTetrahedron, 9> cell_tetrahedra(int s0, int k, int j);

struct SpatialSimplexSample {
  std::array<std::array<std::int64_t, 2>, 3> vertex_keys{};
  std::array<double, 3> weights{};
};

/// Barycentric weights of the skewed-lattice triangle containing a point.
SpatialSimplexSample simplex_sample(const Vec2& uv_prime);

/// Unskewed position of simplex lattice vertex (i, j).
Vec2 simplex_vertex_position(std::int64_t i, std::int64_t j);

struct AngularSample {
  std::array<std::array<std::int64_t, 2>, 4> cell_keys{};
  std::array<double, 4> weights{};
  int resolution = 0;
};

/// Cells per axis of the angular grid over [-1, 1]^2: ceil(2 / micro_roughness).
int angular_resolution(double micro_roughness);

/// Bilinear weights of the four angular cells nearest to the orthographic
/// projection of a tangent-space half-vector (z along the normal).
AngularSample angular_sample(const Vec3& h_local, double micro_roughness);

}  // namespace glint::grid
