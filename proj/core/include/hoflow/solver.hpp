#pragma once

#include <cstdint>
#include <vector>

#include "hoflow/constraint.hpp"
#include "hoflow/image.hpp"

namespace hoflow {

enum class WindowWeighting { uniform, gaussian };

struct SolverConfig {
  ConstraintOrder order = ConstraintOrder::second;
  int window_radius = 7;  // window side = 2r+1
  double alpha = 1e-3;    // Tikhonov damping on the normal matrix
  double delta = 1e-4;    // minimum-eigenvalue validity threshold
  double sigma = 1.4;     // pre-blur
  WindowWeighting window_weighting = WindowWeighting::uniform;
  bool average_spatial = false;  // differentiate 0.5*(prev+curr) instead of curr

  /// Throws ParameterError on an out-of-range field.
  void validate() const;
};

/// Per-pixel (u, v) displacement in pixels/frame with a validity mask.
/// Invalid pixels carry (0, 0).
struct FlowField {
  int width = 0;
  int height = 0;
  std::vector<double> u, v;
  std::vector<std::uint8_t> valid;

  FlowField() = default;
  FlowField(int w, int h);

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
  std::size_t pixel_count() const { return u.size(); }
  std::size_t count_valid() const;
  double valid_fraction() const;
  bool same_size(const FlowField& o) const {
    return width == o.width && height == o.height;
  }
};

/// Windowed least squares over the constraint field. Per pixel, the weighted
/// normal equations G [u v]^T = -b are assembled over the (2r+1)^2 window
/// (replicate padding) with G damped by alpha*I. Weights are raw per-sample
/// factors with the center sample at 1 (uniform: all ones; gaussian: separable
/// taper with sigma = radius/2). The pixel is valid iff min-eigenvalue(G),
/// taken after damping, exceeds delta and everything is finite; invalid pixels
/// emit (0, 0).
FlowField solve_lucas_kanade(const ConstraintField& c, const SolverConfig& cfg);

/// Full pipeline: blur frames with cfg.sigma, differentiate, compose the
/// constraint for cfg.order, solve.
FlowField compute_flow(const GrayImage& prev, const GrayImage& curr,
                       const GrayImage* next, const SolverConfig& cfg);

}  // namespace hoflow
