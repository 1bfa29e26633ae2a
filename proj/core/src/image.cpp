#include "hoflow/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hoflow {

GrayImage::GrayImage(int w, int h, double fill) : width(w), height(h) {
  if (w <= 0 || h <= 0) {
    throw DimensionError("image dimensions must be positive, got " +
                         std::to_string(w) + "x" + std::to_string(h));
  }
  data.assign(static_cast<std::size_t>(w) * h, fill);
}

double GrayImage::at_clamped(int x, int y) const {
  x = std::clamp(x, 0, width - 1);
  y = std::clamp(y, 0, height - 1);
  return at(x, y);
}

Kernel1D Kernel1D::gaussian(double sigma) {
  if (!(sigma > 0.0)) {
    throw ParameterError("gaussian sigma must be > 0, got " + std::to_string(sigma));
  }
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  return gaussian_with_radius(sigma, radius);
}

Kernel1D Kernel1D::gaussian_with_radius(double sigma, int radius) {
  if (!(sigma > 0.0) || radius < 0) {
    throw ParameterError("invalid gaussian kernel parameters");
  }
  Kernel1D k;
  k.taps.resize(2 * radius + 1);
  k.anchor = radius;
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double t = std::exp(-0.5 * (i * i) / (sigma * sigma));
    k.taps[i + radius] = t;
    sum += t;
  }
  for (double& t : k.taps) t /= sum;
  return k;
}

Kernel1D Kernel1D::box(int radius) {
  if (radius < 0) throw ParameterError("box radius must be >= 0");
  Kernel1D k;
  k.taps.assign(2 * radius + 1, 1.0 / (2 * radius + 1));
  k.anchor = radius;
  return k;
}

Kernel1D Kernel1D::central_difference() {
  return Kernel1D{{-0.5, 0.0, 0.5}, 1};
}

Kernel1D Kernel1D::second_difference() {
  return Kernel1D{{1.0, -2.0, 1.0}, 1};
}

GrayImage correlate_axis(const GrayImage& img, const Kernel1D& k, Axis axis) {
  if (k.taps.empty() || k.taps.size() % 2 == 0 ||
      k.anchor != static_cast<int>(k.taps.size()) / 2) {
    throw ParameterError("kernel must have odd length with a centered anchor");
  }
  const int r = k.radius();
  GrayImage out(img.width, img.height);
  if (axis == Axis::X) {
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) {
        double acc = 0.0;
        for (int i = -r; i <= r; ++i) {
          acc += k.taps[i + r] * img.at_clamped(x + i, y);
        }
        out.at(x, y) = acc;
      }
    }
  } else {
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) {
        double acc = 0.0;
        for (int i = -r; i <= r; ++i) {
          acc += k.taps[i + r] * img.at_clamped(x, y + i);
        }
        out.at(x, y) = acc;
      }
    }
  }
  return out;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  if (!(sigma > 0.0)) {
    throw ParameterError("blur sigma must be > 0, got " + std::to_string(sigma));
  }
  const Kernel1D k = Kernel1D::gaussian(sigma);
  return correlate_axis(correlate_axis(img, k, Axis::X), k, Axis::Y);
}

GrayImage derivative(const GrayImage& img, Axis axis, int order) {
  if (order != 1 && order != 2) {
    throw ParameterError("derivative order must be 1 or 2, got " + std::to_string(order));
  }
  const int extent = axis == Axis::X ? img.width : img.height;
  if (extent < 3) {
    throw DimensionError("derivative needs >= 3 pixels along the axis, got " +
                         std::to_string(extent));
  }
  const Kernel1D k = order == 1 ? Kernel1D::central_difference()
                                : Kernel1D::second_difference();
  return correlate_axis(img, k, axis);
}

GrayImage mixed_derivative_xy(const GrayImage& img) {
  if (img.width < 3 || img.height < 3) {
    throw DimensionError("mixed derivative needs >= 3 pixels on both axes, got " +
                         std::to_string(img.width) + "x" + std::to_string(img.height));
  }
  return derivative(derivative(img, Axis::X, 1), Axis::Y, 1);
}

}  // namespace hoflow
