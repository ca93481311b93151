#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "glint/aniso_grid.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace glint;
using namespace glint::grid;

namespace {

constexpr double kPi = std::numbers::pi;

// Semi-axes of the image of the unit circle by dense sampling.
struct SweptEllipse {
  double major;
  double minor;
  Vec2 major_dir;
};

SweptEllipse sweep(const Vec2& dx, const Vec2& dy) {
  SweptEllipse e{0.0, INFINITY, {}};
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    const Vec2 p = dx * std::cos(t) + dy * std::sin(t);
    const double r = length(p);
    if (r > e.major) {
      e.major = r;
      e.major_dir = p / r;
    }
    e.minor = std::min(e.minor, r);
  }
  return e;
}

}  // namespace

TEST(Footprint, AxesMatchEllipseSweep) {
  oracle::TestRng r(4);
  for (int i = 0; i < 200; ++i) {
    const Vec2 dx{r.uniform(-2, 2), r.uniform(-2, 2)};
    const Vec2 dy{r.uniform(-2, 2), r.uniform(-2, 2)};
    if (std::abs(cross(dx, dy)) < 1e-3) continue;
    const Footprint fp = footprint_from_derivatives(dx, dy);
    const SweptEllipse e = sweep(dx, dy);
    EXPECT_NEAR(length(fp.v0), e.major, 1e-6 * e.major);
    EXPECT_NEAR(length(fp.v1), e.minor, 1e-6 * e.major);
    EXPECT_NEAR(std::abs(dot(fp.v0 / length(fp.v0), e.major_dir)), 1.0, 1e-6);
    EXPECT_NEAR(dot(fp.v0, fp.v1), 0.0, 1e-12 * e.major * e.major);
    EXPECT_NEAR(fp.area, std::abs(cross(dx, dy)), 1e-12 * e.major * e.major);
    EXPECT_NEAR(fp.ratio, length(fp.v0) / length(fp.v1), 1e-12 * fp.ratio);
    EXPECT_GE(fp.phi, 0.0);
    EXPECT_LT(fp.phi, kPi);
  }
}

TEST(Footprint, AxisAlignedExamples) {
  const Footprint fp = footprint_from_derivatives({1.0, 0.0}, {0.0, 2.0}, {0.5, 0.25});
  EXPECT_NEAR(length(fp.v0), 2.0, 1e-15);
  EXPECT_NEAR(length(fp.v1), 1.0, 1e-15);
  EXPECT_NEAR(fp.phi, 0.5 * kPi, 1e-15);
  EXPECT_EQ(fp.center, (Vec2{0.5, 0.25}));
  const Footprint iso = footprint_from_derivatives({0.5, 0.0}, {0.0, 0.5});
  EXPECT_NEAR(iso.ratio, 1.0, 1e-15);
  EXPECT_NEAR(iso.area, 0.25, 1e-15);
}

TEST(Footprint, DegenerateJacobianThrows) {
  EXPECT_THROW(footprint_from_derivatives({1.0, 1.0}, {2.0, 2.0}), DegenerateFootprint);
  EXPECT_THROW(footprint_from_derivatives({0.0, 0.0}, {0.0, 0.0}), DegenerateFootprint);
  EXPECT_THROW(make_footprint({}, 0.0, 2.0, 0.0), DegenerateFootprint);
}

TEST(Footprint, LatticeCoordinates) {
  const Footprint fp = make_footprint({}, 0.25, 4.0, 0.3);
  const LatticeCoords c = lattice_coords(fp);
  EXPECT_NEAR(c.s, -2.0, 1e-15);
  EXPECT_NEAR(c.rho, 2.0, 1e-15);
  EXPECT_NEAR(c.phi, 0.3, 1e-15);
  EXPECT_NEAR(lattice_coords(make_footprint({}, 1.0, 1.0, 3.5)).phi, 3.5 - kPi, 1e-15);
}

TEST(Grid, EncloseScale) {
  EXPECT_EQ(enclose_scale(3.0).lo, 2.0);
  EXPECT_EQ(enclose_scale(3.0).hi, 4.0);
  EXPECT_EQ(enclose_scale(4.0).lo, 4.0);
  EXPECT_EQ(enclose_scale(4.0).hi, 4.0);
  EXPECT_EQ(enclose_scale(0.3).lo, 0.25);
  EXPECT_EQ(enclose_scale(0.3).hi, 0.5);
  EXPECT_THROW(enclose_scale(0.0), std::invalid_argument);
  oracle::TestRng r(8);
  for (int i = 0; i < 1000; ++i) {
    const double a = std::exp(r.uniform(-30, 30));
    const auto b = enclose_scale(a);
    ASSERT_LE(b.lo, a);
    ASSERT_GE(b.hi, a);
    ASSERT_TRUE(b.hi == b.lo || b.hi == 2.0 * b.lo);
  }
}

TEST(Grid, TexelShapeAndTransform) {
  // Ratio level 1 texels are twice as long along the grid direction.
  const GridVertex v{0, 1, 0};
  EXPECT_EQ(texel_area(v), 2.0);
  const Vec2 g = transform_uv({2.0, 1.0}, v);
  EXPECT_NEAR(g.x, 1.0, 1e-15);
  EXPECT_NEAR(g.y, 1.0, 1e-15);
  // Rotated grid: the major axis follows the vertex angle.
  const GridVertex w{1, 2, 1};
  const double angle = vertex_angle(w);
  EXPECT_NEAR(angle, 0.25 * kPi, 1e-15);
  const Vec2 along = transform_uv(Vec2{std::cos(angle), std::sin(angle)} * 8.0, w);
  EXPECT_NEAR(along.x, 1.0, 1e-14);
  EXPECT_NEAR(along.y, 0.0, 1e-14);
  oracle::TestRng r(5);
  for (int i = 0; i < 1000; ++i) {
    const GridVertex u{static_cast<int>(r.uniform(-5, 5)), static_cast<int>(r.uniform(0, 8)),
                       static_cast<int>(r.uniform(0, 200))};
    const Vec2 p{r.uniform(-50, 50), r.uniform(-50, 50)};
    const Vec2 q = inverse_transform_uv(transform_uv(p, u), u);
    ASSERT_NEAR(q.x, p.x, 1e-12);
    ASSERT_NEAR(q.y, p.y, 1e-12);
  }
}

TEST(Grid, OrientationsAreNested) {
  for (int r = 0; r < 8; ++r)
    for (int j = 0; j < (1 << r); ++j)
      EXPECT_DOUBLE_EQ(vertex_angle({0, r, j}), vertex_angle({0, r + 1, 2 * j}));
}

TEST(Tetra, PartitionOfUnityAndAffinePrecision) {
  oracle::TestRng r(12);
  for (int i = 0; i < 20000; ++i) {
    const LatticeCoords c{r.uniform(-6, 6), r.uniform(0, 8), r.uniform(0, kPi)};
    const TetraWeights tw = locate_tetrahedron(c);
    double sum = 0.0;
    double s = 0.0;
    double rho = 0.0;
    for (int k = 0; k < 4; ++k) {
      ASSERT_GE(tw.weights[k], 0.0);
      sum += tw.weights[k];
      s += tw.weights[k] * tw.vertices[k].s_level;
      rho += tw.weights[k] * tw.vertices[k].r_level;
    }
    ASSERT_NEAR(sum, 1.0, 1e-9);
    ASSERT_NEAR(s, c.s, 1e-9);
    ASSERT_NEAR(rho, c.rho, 1e-9);
    ASSERT_GE(tw.tetrahedron, 0);
    ASSERT_LT(tw.tetrahedron, 9);
  }
}

TEST(Tetra, VertexReproduction) {
  oracle::TestRng r(13);
  for (int i = 0; i < 5000; ++i) {
    const int level = static_cast<int>(r.uniform(0, 9));
    const GridVertex v{static_cast<int>(r.uniform(-6, 6)), level,
                       static_cast<int>(r.uniform(0, 1 << level))};
    const auto m = props::tetra_map({static_cast<double>(v.s_level), static_cast<double>(level),
                                     vertex_angle(v)});
    EXPECT_NEAR(props::weight_of(m, props::TetraKey{v.s_level, v.r_level, v.phi_index}), 1.0, 1e-9)
        << v.s_level << " " << v.r_level << " " << v.phi_index;
  }
}

TEST(Tetra, NineTetrahedraTileTheCell) {
  for (int k = 0; k < 6; ++k) {
    const auto tets = cell_tetrahedra(0, k, 0);
    double volume = 0.0;
    for (const auto& t : tets) volume += std::abs(props::tetra_volume(t.corners));
    EXPECT_NEAR(volume, 1.0, 1e-9);
  }
}

TEST(Tetra, LocatedTetrahedronContainsPointWithMatchingWeights) {
  oracle::TestRng r(14);
  for (int i = 0; i < 20000; ++i) {
    const int k = static_cast<int>(r.uniform(0, 7));
    const int j = static_cast<int>(r.uniform(0, 1 << k));
    const int s0 = static_cast<int>(r.uniform(-4, 4));
    const double a = r.uniform();
    const double b = r.uniform();
    const double t = r.uniform();
    const LatticeCoords c{s0 + t, k + a, (j + b) * kPi / (1 << k)};
    const TetraWeights tw = locate_tetrahedron(c);
    const auto tets = cell_tetrahedra(s0, k, j);
    int containing = 0;
    for (const auto& tet : tets) {
      const auto bc = props::tetra_barycentric(tet.corners, {a, b, t});
      if (*std::min_element(bc.begin(), bc.end()) >= -1e-12) ++containing;
    }
    ASSERT_GE(containing, 1);
    const auto& tet = tets[tw.tetrahedron];
    const auto bc = props::tetra_barycentric(tet.corners, {a, b, t});
    props::WeightMap<props::TetraKey> expected;
    for (int q = 0; q < 4; ++q)
      expected.push_back({{tet.vertices[q].s_level, tet.vertices[q].r_level, tet.vertices[q].phi_index}, bc[q]});
    ASSERT_LT(props::l1_distance(props::merged(expected), props::tetra_map(c)), 1e-9);
  }
}

TEST(Tetra, ContinuityAlongRandomPaths) {
  oracle::TestRng r(15);
  for (int path = 0; path < 6; ++path) {
    const LatticeCoords p0{r.uniform(-3, 3), r.uniform(-0.5, 9.0), r.uniform(-1, 4)};
    const LatticeCoords p1{r.uniform(-3, 3), r.uniform(-0.5, 9.0), r.uniform(-1, 4)};
    const auto eval = [&](double t) {
      return props::tetra_map({p0.s + t * (p1.s - p0.s), p0.rho + t * (p1.rho - p0.rho),
                               p0.phi + t * (p1.phi - p0.phi)});
    };
    EXPECT_LT(props::max_jump<props::TetraKey>(eval, 1e-4, 1e-6), 1e-6) << path;
  }
}

TEST(Tetra, ContinuityAcrossOrientationWrap) {
  const auto eval = [](double t) { return props::tetra_map({0.3, 2.7, kPi - 0.05 + 0.1 * t}); };
  EXPECT_LT(props::max_jump<props::TetraKey>(eval, 1e-4, 1e-6), 1e-6);
}

TEST(Tetra, OrientationPeriodicity) {
  oracle::TestRng r(16);
  for (int i = 0; i < 2000; ++i) {
    const LatticeCoords c{r.uniform(-3, 3), r.uniform(0, 8), r.uniform(0, kPi)};
    ASSERT_LT(props::l1_distance(props::tetra_map(c), props::tetra_map({c.s, c.rho, c.phi + kPi})), 1e-9);
  }
}

TEST(Tetra, IsotropicFootprintIgnoresOrientation) {
  for (const double phi : {0.0, 0.7, 2.5}) {
    const auto m = props::tetra_map({0.25, 0.0, phi});
    for (const auto& [key, w] : m) EXPECT_EQ(key[1], 0);
  }
}

TEST(Tetra, RatioClampFlag) {
  const TetraWeights tw = locate_tetrahedron(LatticeCoords{0.0, 12.0, 0.1}, {8});
  EXPECT_TRUE(tw.clamped);
  EXPECT_EQ(tw.ratio_used, 256.0);
  EXPECT_FALSE(locate_tetrahedron(LatticeCoords{0.0, 3.0, 0.1}, {8}).clamped);
}

TEST(Simplex, PartitionAndLinearPrecision) {
  oracle::TestRng r(17);
  for (int i = 0; i < 20000; ++i) {
    const Vec2 uv{r.uniform(-100, 100), r.uniform(-100, 100)};
    const auto s = simplex_sample(uv);
    Vec2 pos{};
    double sum = 0.0;
    for (int k = 0; k < 3; ++k) {
      ASSERT_GE(s.weights[k], -1e-12);
      sum += s.weights[k];
      pos = pos + simplex_vertex_position(s.vertex_keys[k][0], s.vertex_keys[k][1]) * s.weights[k];
    }
    ASSERT_NEAR(sum, 1.0, 1e-9);
    ASSERT_NEAR(pos.x, uv.x, 1e-9);
    ASSERT_NEAR(pos.y, uv.y, 1e-9);
  }
}

TEST(Simplex, VertexReproduction) {
  for (std::int64_t i = -5; i <= 5; ++i)
    for (std::int64_t j = -5; j <= 5; ++j) {
      const auto m = props::simplex_map(simplex_vertex_position(i, j));
      EXPECT_NEAR(props::weight_of(m, props::CellKey{i, j}), 1.0, 1e-9);
    }
}

TEST(Simplex, Continuity) {
  oracle::TestRng r(18);
  for (int path = 0; path < 4; ++path) {
    const Vec2 a{r.uniform(-5, 5), r.uniform(-5, 5)};
    const Vec2 b{r.uniform(-5, 5), r.uniform(-5, 5)};
    const auto eval = [&](double t) { return props::simplex_map(a + (b - a) * t); };
    EXPECT_LT(props::max_jump<props::CellKey>(eval, 1e-4, 1e-6), 1e-6);
  }
}

TEST(Angular, ResolutionAndPartition) {
  EXPECT_EQ(angular_resolution(0.05), 40);
  EXPECT_EQ(angular_resolution(0.3), 7);
  EXPECT_THROW(angular_resolution(0.0), std::invalid_argument);
  EXPECT_THROW(angular_sample({0.0, 0.0, -1.0}, 0.1), std::invalid_argument);
  oracle::TestRng r(19);
  for (int i = 0; i < 20000; ++i) {
    const double mr = r.uniform(0.01, 0.5);
    const double rad = std::sqrt(r.uniform()) * 0.999;
    const double phi = r.uniform(0, 2 * kPi);
    const Vec3 h{rad * std::cos(phi), rad * std::sin(phi), std::sqrt(1.0 - rad * rad)};
    const auto s = angular_sample(h, mr);
    double sum = 0.0;
    Vec2 center{};
    const double cpu = 0.5 * s.resolution;
    for (int k = 0; k < 4; ++k) {
      sum += s.weights[k];
      const Vec2 c{(s.cell_keys[k][0] + 0.5) / cpu - 1.0, (s.cell_keys[k][1] + 0.5) / cpu - 1.0};
      center = center + c * s.weights[k];
    }
    ASSERT_NEAR(sum, 1.0, 1e-9);
    ASSERT_NEAR(center.x, h.x, 1e-9);
    ASSERT_NEAR(center.y, h.y, 1e-9);
  }
}

TEST(Angular, CellCenterReproduction) {
  const double mr = 0.1;
  const int res = angular_resolution(mr);
  for (int cx = 5; cx < res - 5; ++cx) {
    const double x = (cx + 0.5) * 2.0 / res - 1.0;
    const double y = (7 + 0.5) * 2.0 / res - 1.0;
    const auto m = props::angular_map({x, y, std::sqrt(std::max(1e-6, 1.0 - x * x - y * y))}, mr);
    EXPECT_NEAR(props::weight_of(m, props::CellKey{cx, 7}), 1.0, 1e-9);
  }
}

TEST(Angular, Continuity) {
  oracle::TestRng r(20);
  for (int path = 0; path < 4; ++path) {
    const Vec2 a{r.uniform(-0.6, 0.6), r.uniform(-0.6, 0.6)};
    const Vec2 b{r.uniform(-0.6, 0.6), r.uniform(-0.6, 0.6)};
    const auto eval = [&](double t) {
      const Vec2 p = a + (b - a) * t;
      return props::angular_map({p.x, p.y, std::sqrt(1.0 - dot(p, p))}, 0.05);
    };
    EXPECT_LT(props::max_jump<props::CellKey>(eval, 1e-4, 1e-6), 1e-6);
  }
}
