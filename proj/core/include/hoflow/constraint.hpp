#pragma once

#include "hoflow/image.hpp"

namespace hoflow {

/// Per-pixel first- and second-order partial derivatives of the intensity
/// function over (x, y, t). Spatial planes are computed on the current frame,
/// temporal differences use dt = 1 frame. itt is identically zero in two-frame
/// mode (a second temporal derivative needs three samples).
struct GradientTensor {
  GrayImage ix, iy, it;
  GrayImage ixx, iyy, itt;
  GrayImage ixy, ixt, iyt;

  int width() const { return ix.width; }
  int height() const { return ix.height; }
};

/// Composite coefficients of the linear flow constraint cx*u + cy*v + ct = 0.
struct ConstraintField {
  GrayImage cx, cy, ct;

  int width() const { return cx.width; }
  int height() const { return cx.height; }
};

enum class ConstraintOrder { first, second };

/// Differentiate a frame pair (or triple). Spatial derivatives are taken on
/// curr, or on the prev/curr average when average_spatial is set; it is the
/// forward difference curr - prev; ixt and iyt are spatial derivatives of the
/// temporal-difference plane; itt uses the (1,-2,1) temporal stencil when a
/// third frame is present and is zero otherwise.
GradientTensor compute_gradient_tensor(const GrayImage& prev, const GrayImage& curr,
                                       const GrayImage* next = nullptr,
                                       bool average_spatial = false);

/// Classic brightness-constancy coefficients: cx = ix, cy = iy, ct = it.
ConstraintField compose_first_order(const GradientTensor& t);

/// Second-order composites:
///   cx = ixy + ixx/2 + ix
///   cy = iyt + iyy/2 + iy
///   ct = ixt + itt/2 + it
ConstraintField compose_second_order(const GradientTensor& t);

ConstraintField compose(const GradientTensor& t, ConstraintOrder order);

}  // namespace hoflow
