#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hoflow/image.hpp"
#include "hoflow/solver.hpp"

namespace hoflow {

/// Interleaved 8-bit RGB raster.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  RgbImage() = default;
  RgbImage(int w, int h);

  std::uint8_t* pixel(int x, int y) {
    return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }
  const std::uint8_t* pixel(int x, int y) const {
    return rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x);
  }
};

/// Color-wheel encoding of one flow vector: hue = direction, saturation =
/// magnitude / max_magnitude, zero flow = white.
std::array<std::uint8_t, 3> flow_color(double u, double v, double max_magnitude);

/// Dense color-coded flow image. max_magnitude defaults to the 99th percentile
/// of valid magnitudes; invalid pixels render black.
RgbImage flow_to_color(const FlowField& f, std::optional<double> max_magnitude = {});

/// 99th-percentile magnitude over valid pixels (>= tiny positive floor).
double default_color_normalization(const FlowField& f);

/// Sparse arrow overlay: the base frame as gray RGB with, at every stride-th
/// valid pixel, a red segment from (x, y) to (x + scale*u, y + scale*v) with a
/// 3-pixel arrowhead, clipped to bounds.
RgbImage flow_to_quiver(const GrayImage& base, const FlowField& f, int stride,
                        double scale);

std::vector<std::uint8_t> encode_png(const RgbImage& img);

}  // namespace hoflow
