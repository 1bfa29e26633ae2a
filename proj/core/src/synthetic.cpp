#include "hoflow/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hoflow {

void SyntheticSpec::validate() const {
  if (width < 32 || height < 32) {
    throw ParameterError("synthetic size must be at least 32x32, got " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  if (!std::isfinite(translate_u) || !std::isfinite(translate_v) ||
      !std::isfinite(rotate_deg) || !std::isfinite(zoom_factor)) {
    throw ParameterError("synthetic motion parameters must be finite");
  }
  if (motion == MotionKind::zoom && !(zoom_factor > 0.0)) {
    throw ParameterError("zoom factor must be > 0");
  }
}

namespace {

constexpr double kSinusoidPeriod = 32.0;  // pixels

// Continuous texture over the image plane, range [0, 1].
class Texture {
 public:
  Texture(const SyntheticSpec& spec) : spec_(spec) {
    cx_ = 0.5 * (spec.width - 1);
    cy_ = 0.5 * (spec.height - 1);
    if (spec.texture == TextureKind::quadratic_bowl) {
      norm_ = cx_ * cx_ + cy_ * cy_;  // squared corner distance
    } else if (spec.texture == TextureKind::random_smooth) {
      build_smooth_grid();
    }
  }

  double eval(double x, double y) const {
    switch (spec_.texture) {
      case TextureKind::quadratic_bowl: {
        const double dx = x - cx_;
        const double dy = y - cy_;
        const double t = 0.05 + 0.9 * (dx * dx + dy * dy) / norm_;
        return std::clamp(t, 0.0, 1.0);
      }
      case TextureKind::sinusoid_grid: {
        const double w = 2.0 * M_PI / kSinusoidPeriod;
        return 0.5 + 0.25 * std::sin(w * x) + 0.25 * std::sin(w * y);
      }
      case TextureKind::random_smooth:
        return sample_bilinear(x, y);
    }
    return 0.5;
  }

 private:
  void build_smooth_grid() {
    GrayImage noise(spec_.width, spec_.height);
    std::mt19937 rng(spec_.seed);
    for (double& v : noise.data) {
      v = rng() * (1.0 / 4294967296.0);  // deterministic across platforms
    }
    grid_ = gaussian_blur(noise, 3.0);
    const auto [lo_it, hi_it] =
        std::minmax_element(grid_.data.begin(), grid_.data.end());
    const double lo = *lo_it;  // copy before the loop rewrites the elements
    const double span = *hi_it - lo;
    if (span > 0.0) {
      for (double& v : grid_.data) v = 0.1 + 0.8 * (v - lo) / span;
    } else {
      std::fill(grid_.data.begin(), grid_.data.end(), 0.5);
    }
  }

  double sample_bilinear(double x, double y) const {
    x = std::clamp(x, 0.0, static_cast<double>(grid_.width - 1));
    y = std::clamp(y, 0.0, static_cast<double>(grid_.height - 1));
    const int x0 = std::min(static_cast<int>(x), grid_.width - 2);
    const int y0 = std::min(static_cast<int>(y), grid_.height - 2);
    const double fx = x - x0;
    const double fy = y - y0;
    return (1 - fy) * ((1 - fx) * grid_.at(x0, y0) + fx * grid_.at(x0 + 1, y0)) +
           fy * ((1 - fx) * grid_.at(x0, y0 + 1) + fx * grid_.at(x0 + 1, y0 + 1));
  }

  const SyntheticSpec& spec_;
  double cx_ = 0.0, cy_ = 0.0;
  double norm_ = 1.0;
  GrayImage grid_;
};

struct Vec2 {
  double x, y;
};

// Forward motion of a frame0 point; ground truth is forward(p) - p.
Vec2 motion_forward(const SyntheticSpec& s, double cx, double cy, double x, double y) {
  switch (s.motion) {
    case MotionKind::translate:
      return {x + s.translate_u, y + s.translate_v};
    case MotionKind::rotate: {
      const double th = s.rotate_deg * M_PI / 180.0;
      const double c = std::cos(th), sn = std::sin(th);
      const double dx = x - cx, dy = y - cy;
      return {cx + c * dx - sn * dy, cy + sn * dx + c * dy};
    }
    case MotionKind::zoom:
      return {cx + s.zoom_factor * (x - cx), cy + s.zoom_factor * (y - cy)};
  }
  return {x, y};
}

// Point in frame0 coordinates that lands on (x, y) in frame1.
Vec2 motion_inverse(const SyntheticSpec& s, double cx, double cy, double x, double y) {
  switch (s.motion) {
    case MotionKind::translate:
      return {x - s.translate_u, y - s.translate_v};
    case MotionKind::rotate: {
      const double th = -s.rotate_deg * M_PI / 180.0;
      const double c = std::cos(th), sn = std::sin(th);
      const double dx = x - cx, dy = y - cy;
      return {cx + c * dx - sn * dy, cy + sn * dx + c * dy};
    }
    case MotionKind::zoom:
      return {cx + (x - cx) / s.zoom_factor, cy + (y - cy) / s.zoom_factor};
  }
  return {x, y};
}

}  // namespace

SyntheticScene generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const Texture tex(spec);
  const double cx = 0.5 * (spec.width - 1);
  const double cy = 0.5 * (spec.height - 1);

  SyntheticScene scene;
  scene.frame0 = GrayImage(spec.width, spec.height);
  scene.frame1 = GrayImage(spec.width, spec.height);
  scene.ground_truth = FlowField(spec.width, spec.height);

  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      scene.frame0.at(x, y) = tex.eval(x, y);
      const Vec2 src = motion_inverse(spec, cx, cy, x, y);
      scene.frame1.at(x, y) = tex.eval(src.x, src.y);
      const Vec2 dst = motion_forward(spec, cx, cy, x, y);
      const std::size_t i = scene.ground_truth.index(x, y);
      scene.ground_truth.u[i] = dst.x - x;
      scene.ground_truth.v[i] = dst.y - y;
      scene.ground_truth.valid[i] = 1;
    }
  }
  return scene;
}

}  // namespace hoflow
