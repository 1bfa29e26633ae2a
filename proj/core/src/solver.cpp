#include "hoflow/solver.hpp"

#include <cmath>
#include <string>

namespace hoflow {

void SolverConfig::validate() const {
  if (window_radius < 1) {
    throw ParameterError("window_radius must be >= 1, got " +
                         std::to_string(window_radius));
  }
  if (!(alpha >= 0.0)) throw ParameterError("alpha must be >= 0");
  if (!(delta >= 0.0)) throw ParameterError("delta must be >= 0");
  if (!(sigma > 0.0)) throw ParameterError("sigma must be > 0");
}

FlowField::FlowField(int w, int h) : width(w), height(h) {
  if (w <= 0 || h <= 0) {
    throw DimensionError("flow dimensions must be positive, got " + std::to_string(w) +
                         "x" + std::to_string(h));
  }
  const std::size_t n = static_cast<std::size_t>(w) * h;
  u.assign(n, 0.0);
  v.assign(n, 0.0);
  valid.assign(n, 0);
}

std::size_t FlowField::count_valid() const {
  std::size_t n = 0;
  for (const std::uint8_t f : valid) n += f != 0;
  return n;
}

double FlowField::valid_fraction() const {
  return pixel_count() == 0 ? 0.0
                            : static_cast<double>(count_valid()) / pixel_count();
}

namespace {

// Raw per-sample window weights (separable product over the window). The
// center sample always weighs 1, so alpha and delta act on one scale for both
// weightings: uniform is all ones, gaussian tapers with sigma = radius/2.
Kernel1D window_kernel(const SolverConfig& cfg) {
  const int r = cfg.window_radius;
  Kernel1D k;
  k.taps.assign(2 * r + 1, 1.0);
  k.anchor = r;
  if (cfg.window_weighting == WindowWeighting::gaussian) {
    const double sw = 0.5 * r;
    for (int i = -r; i <= r; ++i) {
      k.taps[i + r] = std::exp(-0.5 * (i * i) / (sw * sw));
    }
  }
  return k;
}

}  // namespace

FlowField solve_lucas_kanade(const ConstraintField& c, const SolverConfig& cfg) {
  cfg.validate();
  if (!c.cx.same_size(c.cy) || !c.cx.same_size(c.ct)) {
    throw ShapeError("constraint planes disagree on dimensions");
  }

  const int w = c.width();
  const int h = c.height();
  const Kernel1D win = window_kernel(cfg);

  // Windowed moments as separable correlations of the product planes; this is
  // the weighted gather over the (2r+1)^2 window with fixed summation order.
  GrayImage pxx(w, h), pxy(w, h), pyy(w, h), pxt(w, h), pyt(w, h);
  for (std::size_t i = 0; i < pxx.data.size(); ++i) {
    const double cx = c.cx.data[i];
    const double cy = c.cy.data[i];
    const double ct = c.ct.data[i];
    pxx.data[i] = cx * cx;
    pxy.data[i] = cx * cy;
    pyy.data[i] = cy * cy;
    pxt.data[i] = cx * ct;
    pyt.data[i] = cy * ct;
  }
  const auto windowed = [&win](const GrayImage& p) {
    return correlate_axis(correlate_axis(p, win, Axis::X), win, Axis::Y);
  };
  const GrayImage sxx = windowed(pxx);
  const GrayImage sxy = windowed(pxy);
  const GrayImage syy = windowed(pyy);
  const GrayImage sxt = windowed(pxt);
  const GrayImage syt = windowed(pyt);

  FlowField f(w, h);
  for (std::size_t i = 0; i < f.pixel_count(); ++i) {
    const double g00 = sxx.data[i] + cfg.alpha;
    const double g01 = sxy.data[i];
    const double g11 = syy.data[i] + cfg.alpha;
    const double bx = sxt.data[i];
    const double by = syt.data[i];

    if (!std::isfinite(g00) || !std::isfinite(g01) || !std::isfinite(g11) ||
        !std::isfinite(bx) || !std::isfinite(by)) {
      continue;  // left invalid at (0,0)
    }
    const double half_trace = 0.5 * (g00 + g11);
    const double half_diff = 0.5 * (g00 - g11);
    const double min_eig = half_trace - std::sqrt(half_diff * half_diff + g01 * g01);
    if (!(min_eig > cfg.delta)) {
      continue;
    }
    const double det = g00 * g11 - g01 * g01;
    const double uu = (g01 * by - g11 * bx) / det;
    const double vv = (g01 * bx - g00 * by) / det;
    if (!std::isfinite(uu) || !std::isfinite(vv)) {
      continue;
    }
    f.u[i] = uu;
    f.v[i] = vv;
    f.valid[i] = 1;
  }
  return f;
}

FlowField compute_flow(const GrayImage& prev, const GrayImage& curr,
                       const GrayImage* next, const SolverConfig& cfg) {
  cfg.validate();
  const GrayImage bp = gaussian_blur(prev, cfg.sigma);
  const GrayImage bc = gaussian_blur(curr, cfg.sigma);
  GrayImage bn;
  if (next) bn = gaussian_blur(*next, cfg.sigma);
  const GradientTensor t =
      compute_gradient_tensor(bp, bc, next ? &bn : nullptr, cfg.average_spatial);
  const ConstraintField c = compose(t, cfg.order);
  return solve_lucas_kanade(c, cfg);
}

}  // namespace hoflow
