#pragma once

#include <cstdint>

#include "hoflow/image.hpp"
#include "hoflow/solver.hpp"

namespace hoflow {

enum class TextureKind { quadratic_bowl, sinusoid_grid, random_smooth };
enum class MotionKind { translate, rotate, zoom };

/// A frame pair with exact ground truth. The texture is a closed-form (or
/// seeded smooth) function of continuous coordinates; frame1 samples it under
/// the inverse motion, so the pair carries no resampling error.
struct SyntheticSpec {
  TextureKind texture = TextureKind::sinusoid_grid;
  std::uint32_t seed = 0;  // random_smooth only

  MotionKind motion = MotionKind::translate;
  double translate_u = 0.0;
  double translate_v = 0.0;
  double rotate_deg = 0.0;   // about the frame center
  double zoom_factor = 1.0;  // about the frame center

  int width = 256;
  int height = 256;

  void validate() const;  // size >= 32x32, finite motion parameters
};

struct SyntheticScene {
  GrayImage frame0;
  GrayImage frame1;
  FlowField ground_truth;  // exact per-pixel displacement, all valid
};

SyntheticScene generate_synthetic(const SyntheticSpec& spec);

}  // namespace hoflow
