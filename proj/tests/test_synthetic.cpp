#include <cmath>

#include "doctest.h"
#include "hoflow/synthetic.hpp"
#include "test_helpers.hpp"

using hoflow::MotionKind;
using hoflow::SyntheticScene;
using hoflow::SyntheticSpec;
using hoflow::TextureKind;

TEST_CASE("spec validation") {
  SyntheticSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.width = 31;
  CHECK_THROWS_AS(spec.validate(), hoflow::ParameterError);
  spec = SyntheticSpec{};
  spec.translate_u = std::nan("");
  CHECK_THROWS_AS(spec.validate(), hoflow::ParameterError);
  spec = SyntheticSpec{};
  spec.motion = MotionKind::zoom;
  spec.zoom_factor = 0.0;
  CHECK_THROWS_AS(spec.validate(), hoflow::ParameterError);
  CHECK_THROWS_AS(generate_synthetic(spec), hoflow::ParameterError);
}

TEST_CASE("translation ground truth is the constant offset, everywhere valid") {
  SyntheticSpec spec;
  spec.motion = MotionKind::translate;
  spec.translate_u = 1.5;
  spec.translate_v = -0.75;
  spec.width = 48;
  spec.height = 40;
  const SyntheticScene scene = generate_synthetic(spec);
  REQUIRE(scene.ground_truth.pixel_count() == 48u * 40u);
  for (std::size_t i = 0; i < scene.ground_truth.pixel_count(); ++i) {
    CHECK(scene.ground_truth.u[i] == 1.5);
    CHECK(scene.ground_truth.v[i] == -0.75);
    CHECK(scene.ground_truth.valid[i] == 1);
  }
}

TEST_CASE("integer translation shifts the sampled texture exactly") {
  SyntheticSpec spec;
  spec.texture = TextureKind::sinusoid_grid;
  spec.motion = MotionKind::translate;
  spec.translate_u = 2.0;
  spec.translate_v = 1.0;
  spec.width = 64;
  spec.height = 64;
  const SyntheticScene scene = generate_synthetic(spec);
  // frame1(x, y) samples the texture at (x-2, y-1); on the shared grid that
  // is frame0 shifted, with no resampling error at all.
  for (int y = 1; y < 64; ++y) {
    for (int x = 2; x < 64; ++x) {
      CHECK(scene.frame1.at(x, y) == scene.frame0.at(x - 2, y - 1));
    }
  }
}

TEST_CASE("sinusoid texture follows its closed form") {
  SyntheticSpec spec;
  spec.texture = TextureKind::sinusoid_grid;
  spec.width = 40;
  spec.height = 40;
  const SyntheticScene scene = generate_synthetic(spec);
  const double w = 2.0 * M_PI / 32.0;
  for (int y : {0, 7, 39}) {
    for (int x : {0, 13, 39}) {
      const double want = 0.5 + 0.25 * std::sin(w * x) + 0.25 * std::sin(w * y);
      CHECK(scene.frame0.at(x, y) == testutil::near(want, 1e-12));
    }
  }
}

TEST_CASE("bowl texture is darkest at the center, brightest at corners") {
  SyntheticSpec spec;
  spec.texture = TextureKind::quadratic_bowl;
  spec.width = 33;
  spec.height = 33;
  const SyntheticScene scene = generate_synthetic(spec);
  CHECK(scene.frame0.at(16, 16) == testutil::near(0.05, 1e-12));
  CHECK(scene.frame0.at(0, 0) == testutil::near(0.95, 1e-12));
  CHECK(scene.frame0.at(32, 32) == testutil::near(0.95, 1e-12));
  CHECK(scene.frame0.at(16, 0) < scene.frame0.at(0, 0));
}

TEST_CASE("rotation fixes the center and grows linearly with radius") {
  SyntheticSpec spec;
  spec.motion = MotionKind::rotate;
  spec.rotate_deg = 5.0;
  spec.width = 33;
  spec.height = 33;
  const SyntheticScene scene = generate_synthetic(spec);
  const auto& gt = scene.ground_truth;
  CHECK(gt.u[gt.index(16, 16)] == 0.0);
  CHECK(gt.v[gt.index(16, 16)] == 0.0);

  double prev = -1.0;
  for (int x = 17; x < 33; ++x) {
    const std::size_t i = gt.index(x, 16);
    const double mag = std::hypot(gt.u[i], gt.v[i]);
    const double radius = x - 16;
    const double expect = 2.0 * radius * std::sin(5.0 * M_PI / 360.0);
    CHECK(mag == testutil::near(expect, 1e-10));
    CHECK(mag > prev);
    prev = mag;
  }
}

TEST_CASE("zoom displacement is (factor-1) times the center offset") {
  SyntheticSpec spec;
  spec.motion = MotionKind::zoom;
  spec.zoom_factor = 1.25;
  spec.width = 33;
  spec.height = 33;
  const SyntheticScene scene = generate_synthetic(spec);
  const auto& gt = scene.ground_truth;
  CHECK(gt.u[gt.index(0, 0)] == testutil::near(-4.0, 1e-12));
  CHECK(gt.v[gt.index(0, 0)] == testutil::near(-4.0, 1e-12));
  CHECK(gt.u[gt.index(32, 16)] == testutil::near(4.0, 1e-12));
  CHECK(gt.v[gt.index(32, 16)] == testutil::near(0.0, 1e-12));
}

TEST_CASE("random smooth texture is seeded and stays inside its band") {
  SyntheticSpec spec;
  spec.texture = TextureKind::random_smooth;
  spec.seed = 77;
  spec.motion = MotionKind::translate;
  spec.translate_u = 0.6;
  const SyntheticScene a = generate_synthetic(spec);
  const SyntheticScene b = generate_synthetic(spec);
  CHECK(a.frame0.data == b.frame0.data);
  CHECK(a.frame1.data == b.frame1.data);

  spec.seed = 78;
  const SyntheticScene c = generate_synthetic(spec);
  CHECK(a.frame0.data != c.frame0.data);

  for (double v : a.frame0.data) {
    CHECK(v >= 0.1);
    CHECK(v <= 0.9);
  }
  for (double v : a.frame1.data) {
    CHECK(v >= 0.1 - 1e-12);
    CHECK(v <= 0.9 + 1e-12);
  }
}

TEST_CASE("frames and ground truth share dimensions") {
  SyntheticSpec spec;
  spec.width = 50;
  spec.height = 34;
  const SyntheticScene scene = generate_synthetic(spec);
  CHECK(scene.frame0.width == 50);
  CHECK(scene.frame1.height == 34);
  CHECK(scene.ground_truth.width == 50);
  CHECK(scene.ground_truth.height == 34);
}
