#pragma once

#include <cstddef>
#include <vector>

#include "hoflow/errors.hpp"

namespace hoflow {

enum class Axis { X, Y };

/// Single-channel scalar plane, row-major. Decoded frames hold intensities
/// normalized to [0,1]; derivative planes hold per-pixel / per-frame rates.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  GrayImage() = default;
  GrayImage(int w, int h, double fill = 0.0);

  double& at(int x, int y) {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  double at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  /// Sample with replicate padding: out-of-range coordinates clamp to the edge.
  double at_clamped(int x, int y) const;

  bool same_size(const GrayImage& o) const {
    return width == o.width && height == o.height;
  }
  std::size_t pixel_count() const { return data.size(); }
};

/// Odd-length 1-D stencil with a centered anchor.
struct Kernel1D {
  std::vector<double> taps;
  int anchor = 0;

  int radius() const { return anchor; }

  /// Discrete Gaussian, radius ceil(3*sigma), renormalized to unit sum.
  static Kernel1D gaussian(double sigma);
  /// Gaussian with an explicit radius (solver window weighting).
  static Kernel1D gaussian_with_radius(double sigma, int radius);
  /// Uniform window of the given radius, unit sum.
  static Kernel1D box(int radius);
  /// First-derivative taps (-1/2, 0, +1/2).
  static Kernel1D central_difference();
  /// Second-derivative taps (1, -2, 1).
  static Kernel1D second_difference();
};

/// Correlate one axis of the image with the kernel, replicate padding.
/// out(x,y) = sum_k taps[k] * img(x + k - anchor, y) for Axis::X.
GrayImage correlate_axis(const GrayImage& img, const Kernel1D& k, Axis axis);

GrayImage gaussian_blur(const GrayImage& img, double sigma);

/// Finite-difference derivative along one axis; order 1 or 2.
GrayImage derivative(const GrayImage& img, Axis axis, int order);

/// d2/dxdy as composed first derivatives; stencils commute.
GrayImage mixed_derivative_xy(const GrayImage& img);

}  // namespace hoflow
