#include "hoflow/viz.hpp"

#include <algorithm>
#include <cmath>

#include "hoflow/image_io.hpp"

namespace hoflow {

RgbImage::RgbImage(int w, int h) : width(w), height(h) {
  if (w <= 0 || h <= 0) {
    throw DimensionError("rgb dimensions must be positive, got " + std::to_string(w) +
                         "x" + std::to_string(h));
  }
  rgb.assign(3 * static_cast<std::size_t>(w) * h, 0);
}

namespace {

// Color wheel with perceptually sized hue transitions, interpolated around
// red-yellow-green-cyan-blue-magenta.
struct ColorWheel {
  static constexpr int kRY = 15, kYG = 6, kGC = 4, kCB = 11, kBM = 13, kMR = 6;
  static constexpr int size = kRY + kYG + kGC + kCB + kBM + kMR;
  std::array<std::array<double, 3>, size> cols{};

  ColorWheel() {
    int k = 0;
    auto put = [&](double r, double g, double b) { cols[k++] = {r, g, b}; };
    for (int i = 0; i < kRY; ++i) put(255, 255.0 * i / kRY, 0);
    for (int i = 0; i < kYG; ++i) put(255 - 255.0 * i / kYG, 255, 0);
    for (int i = 0; i < kGC; ++i) put(0, 255, 255.0 * i / kGC);
    for (int i = 0; i < kCB; ++i) put(0, 255 - 255.0 * i / kCB, 255);
    for (int i = 0; i < kBM; ++i) put(255.0 * i / kBM, 0, 255);
    for (int i = 0; i < kMR; ++i) put(255, 0, 255 - 255.0 * i / kMR);
  }
};

const ColorWheel& wheel() {
  static const ColorWheel w;
  return w;
}

std::uint8_t gray_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

void put_red(RgbImage& img, int x, int y) {
  if (x < 0 || y < 0 || x >= img.width || y >= img.height) return;
  std::uint8_t* p = img.pixel(x, y);
  p[0] = 255;
  p[1] = 0;
  p[2] = 0;
}

// Bresenham segment, clipped per pixel.
void draw_red_line(RgbImage& img, int x0, int y0, int x1, int y1) {
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    put_red(img, x0, y0);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

}  // namespace

std::array<std::uint8_t, 3> flow_color(double u, double v, double max_magnitude) {
  const ColorWheel& w = wheel();
  const double norm = max_magnitude > 0.0 ? max_magnitude : 1.0;
  const double rad = std::min(1.0, std::sqrt(u * u + v * v) / norm);
  const double angle = std::atan2(-v, -u) / M_PI;  // in [-1, 1]
  const double fk = (angle + 1.0) / 2.0 * (ColorWheel::size - 1);
  const int k0 = std::min(static_cast<int>(fk), ColorWheel::size - 1);
  const int k1 = (k0 + 1) % ColorWheel::size;
  const double f = fk - k0;
  std::array<std::uint8_t, 3> out{};
  for (int c = 0; c < 3; ++c) {
    const double col = ((1.0 - f) * w.cols[k0][c] + f * w.cols[k1][c]) / 255.0;
    const double shaded = 1.0 - rad * (1.0 - col);  // rad 0 -> white
    out[c] = static_cast<std::uint8_t>(std::lround(255.0 * shaded));
  }
  return out;
}

double default_color_normalization(const FlowField& f) {
  std::vector<double> mags;
  mags.reserve(f.pixel_count());
  for (std::size_t i = 0; i < f.pixel_count(); ++i) {
    if (f.valid[i]) mags.push_back(std::sqrt(f.u[i] * f.u[i] + f.v[i] * f.v[i]));
  }
  if (mags.empty()) return 1.0;
  const std::size_t idx =
      static_cast<std::size_t>(0.99 * static_cast<double>(mags.size() - 1));
  std::nth_element(mags.begin(), mags.begin() + idx, mags.end());
  const double p99 = mags[idx];
  return p99 > 0.0 ? p99 : 1.0;
}

RgbImage flow_to_color(const FlowField& f, std::optional<double> max_magnitude) {
  const double norm = max_magnitude.value_or(default_color_normalization(f));
  RgbImage img(f.width, f.height);
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      const std::size_t i = f.index(x, y);
      std::uint8_t* p = img.pixel(x, y);
      if (!f.valid[i]) {
        p[0] = p[1] = p[2] = 0;
        continue;
      }
      const auto c = flow_color(f.u[i], f.v[i], norm);
      p[0] = c[0];
      p[1] = c[1];
      p[2] = c[2];
    }
  }
  return img;
}

RgbImage flow_to_quiver(const GrayImage& base, const FlowField& f, int stride,
                        double scale) {
  if (stride < 1) throw ParameterError("quiver stride must be >= 1");
  if (base.width != f.width || base.height != f.height) {
    throw ShapeError("quiver base and flow dimensions differ");
  }
  RgbImage img(base.width, base.height);
  for (int y = 0; y < base.height; ++y) {
    for (int x = 0; x < base.width; ++x) {
      const std::uint8_t g = gray_byte(base.at(x, y));
      std::uint8_t* p = img.pixel(x, y);
      p[0] = p[1] = p[2] = g;
    }
  }
  for (int y = 0; y < f.height; y += stride) {
    for (int x = 0; x < f.width; x += stride) {
      const std::size_t i = f.index(x, y);
      if (!f.valid[i]) continue;
      const double du = scale * f.u[i];
      const double dv = scale * f.v[i];
      const int tx = static_cast<int>(std::lround(x + du));
      const int ty = static_cast<int>(std::lround(y + dv));
      draw_red_line(img, x, y, tx, ty);
      const double len = std::sqrt(du * du + dv * dv);
      if (len < 0.5) continue;  // a dot; no head
      const double theta = std::atan2(dv, du);
      for (const double side : {+1.0, -1.0}) {
        const double phi = theta + side * (M_PI * 5.0 / 6.0);  // 150 degrees
        const int hx = static_cast<int>(std::lround(tx + 3.0 * std::cos(phi)));
        const int hy = static_cast<int>(std::lround(ty + 3.0 * std::sin(phi)));
        draw_red_line(img, tx, ty, hx, hy);
      }
    }
  }
  return img;
}

std::vector<std::uint8_t> encode_png(const RgbImage& img) {
  RawImage raw;
  raw.width = img.width;
  raw.height = img.height;
  raw.channels = 3;
  raw.bit_depth = 8;
  raw.max_value = 255;
  raw.samples.assign(img.rgb.begin(), img.rgb.end());
  return encode_png(raw);
}

}  // namespace hoflow
