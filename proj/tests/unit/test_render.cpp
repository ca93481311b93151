#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "glint/render.hpp"

using namespace glint;
using namespace glint::render;

namespace {

SceneConfig small_plane(double tilt) {
  SceneConfig c;
  c.tilt_deg = tilt;
  c.width = 32;
  c.height = 24;
  c.light_position = {0.3, -0.2, 3.0};
  c.material.micro = {ndf::NdfKind::beckmann, 0.5, {0.9, 0.8, 0.7}};
  c.material.ratio = 0.2;
  c.material.density = 1e5;
  c.material.seed = c.seed = 5;
  return c;
}

std::string ppm_bytes(const Image& img) {
  std::ostringstream os;
  write_ppm(os, img);
  return os.str();
}

}  // namespace

TEST(Render, PpmLayout) {
  Image img(2, 1);
  img.at(0, 0) = {1.0, 0.0, 0.5};
  img.at(1, 0) = {2.0, -1.0, 0.218};
  const std::string bytes = ppm_bytes(img);
  const std::string header = "P6\n2 1\n255\n";
  ASSERT_EQ(bytes.size(), header.size() + 6);
  EXPECT_EQ(bytes.substr(0, header.size()), header);
  const auto* px = reinterpret_cast<const unsigned char*>(bytes.data() + header.size());
  EXPECT_EQ(px[0], 255);
  EXPECT_EQ(px[1], 0);
  EXPECT_EQ(px[2], static_cast<unsigned char>(std::lround(std::pow(0.5, 1 / 2.2) * 255)));
  EXPECT_EQ(px[3], 255);
  EXPECT_EQ(px[4], 0);
  EXPECT_EQ(px[5], static_cast<unsigned char>(std::lround(std::pow(0.218, 1 / 2.2) * 255)));
}

TEST(Render, PpmFileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "glint_roundtrip.ppm";
  Image img(3, 2);
  img.at(2, 1) = {0.25, 0.5, 1.0};
  write_ppm(path, img);
  const Ppm8 back = read_ppm(path);
  EXPECT_EQ(back.width, 3);
  EXPECT_EQ(back.height, 2);
  EXPECT_EQ(back.data.back(), 255);
  std::filesystem::remove(path);
}

TEST(Render, CenterRayLooksAtTarget) {
  const SceneConfig c = small_plane(90.0);
  const CameraRig cam = CameraRig::from_config(c);
  const Vec3 d = normalize(cam.direction(0.5 * c.width, 0.5 * c.height));
  EXPECT_NEAR(d.z, -1.0, 1e-12);
}

TEST(Render, AnalyticDifferentialsMatchFiniteDifferences) {
  for (const SceneType type : {SceneType::plane, SceneType::sphere}) {
    SceneConfig c = small_plane(40.0);
    c.scene = type;
    c.width = c.height = 201;
    c.uv_scale = 0.5;
    const CameraRig cam = CameraRig::from_config(c);
    const int x = 100;
    const int y = 90;
    const auto h = trace_primary(c, cam, x, y);
    const auto hx0 = trace_primary(c, cam, x - 1, y);
    const auto hx1 = trace_primary(c, cam, x + 1, y);
    const auto hy0 = trace_primary(c, cam, x, y - 1);
    const auto hy1 = trace_primary(c, cam, x, y + 1);
    ASSERT_TRUE(h && hx0 && hx1 && hy0 && hy1);
    const Vec2 fdx = (hx1->uv - hx0->uv) * 0.5;
    const Vec2 fdy = (hy1->uv - hy0->uv) * 0.5;
    const double scale = length(fdx) + length(fdy);
    EXPECT_NEAR(h->duv_dx.x, fdx.x, 0.01 * scale);
    EXPECT_NEAR(h->duv_dx.y, fdx.y, 0.01 * scale);
    EXPECT_NEAR(h->duv_dy.x, fdy.x, 0.01 * scale);
    EXPECT_NEAR(h->duv_dy.y, fdy.y, 0.01 * scale);
  }
}

TEST(Render, GrazingTiltStretchesFootprint) {
  for (const double tilt : {90.0, 25.0}) {
    const SceneConfig c = small_plane(tilt);
    const CameraRig cam = CameraRig::from_config(c);
    const auto h = trace_primary(c, cam, c.width / 2, c.height / 2);
    ASSERT_TRUE(h);
    const auto fp = hit_footprint(*h);
    ASSERT_TRUE(fp);
    const double expected = 1.0 / std::sin(tilt * std::numbers::pi / 180.0);
    EXPECT_NEAR(fp->ratio, expected, 0.05 * expected) << tilt;
  }
}

TEST(Render, ZeroIntensityLightIsBlack) {
  SceneConfig c = small_plane(60.0);
  c.light_intensity = {};
  for (const Rgb& p : render::render(c).image.pixels) ASSERT_EQ(p, Rgb{});
}

TEST(Render, BitIdenticalAcrossThreadCounts) {
  const SceneConfig c = small_plane(25.0);
  EXPECT_EQ(ppm_bytes(render::render(c, 1).image), ppm_bytes(render::render(c, 8).image));
}

TEST(Render, DenseGlintsConvergeToSmoothRender) {
  SceneConfig c = small_plane(90.0);
  c.width = c.height = 24;
  c.material.ratio = 1.0;
  c.material.density = 1e8;
  const Image glints = render::render(c).image;
  c.smooth = true;
  const Image smooth = render::render(c).image;
  for (std::size_t i = 0; i < glints.pixels.size(); ++i) {
    ASSERT_GT(smooth.pixels[i].r, 0.0);
    ASSERT_NEAR(glints.pixels[i].r, smooth.pixels[i].r, 0.02 * smooth.pixels[i].r) << i;
    ASSERT_NEAR(glints.pixels[i].b, smooth.pixels[i].b, 0.02 * smooth.pixels[i].b) << i;
  }
}

TEST(Render, ShippedConfigsAreFinite) {
  for (const char* name : {"plane90.cfg", "plane25.cfg", "sphere.cfg"}) {
    const SceneConfig c = load_config(std::string(GLINT_CONFIG_DIR) + "/" + name);
    const RenderOutput out = render::render(c, 2);
    for (const Rgb& p : out.image.pixels)
      ASSERT_TRUE(std::isfinite(p.r) && std::isfinite(p.g) && std::isfinite(p.b) && p.r >= 0.0) << name;
  }
}

TEST(Render, TraceCsvHasOneRowPerPixel) {
  const SceneConfig c = small_plane(90.0);
  const RenderOutput out = render::render(c);
  std::ostringstream os;
  write_trace_csv(os, out);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,hit,binomial_calls,anisotropy_used,clamped,tetrahedron,r,g,b");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, c.width * c.height);
}

TEST(Render, SphereMissesAreBlackAndUncounted) {
  SceneConfig c = small_plane(30.0);
  c.scene = SceneType::sphere;
  c.camera_distance = 10.0;
  const RenderOutput out = render::render(c);
  EXPECT_FALSE(out.traces.front().hit);
  EXPECT_EQ(out.traces.front().eval.binomial_calls, 0);
  EXPECT_EQ(out.image.pixels.front(), Rgb{});
  const auto& center = out.traces[static_cast<std::size_t>(c.height / 2) * c.width + c.width / 2];
  EXPECT_TRUE(center.hit);
  EXPECT_EQ(center.eval.binomial_calls, kBinomialCallsPerPixel);
}
