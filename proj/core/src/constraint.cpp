#include "hoflow/constraint.hpp"

#include <string>

namespace hoflow {

namespace {

std::string dims(const GrayImage& img) {
  return std::to_string(img.width) + "x" + std::to_string(img.height);
}

}  // namespace

GradientTensor compute_gradient_tensor(const GrayImage& prev, const GrayImage& curr,
                                       const GrayImage* next, bool average_spatial) {
  if (!prev.same_size(curr)) {
    throw ShapeError("frame dimensions differ: prev " + dims(prev) + " vs curr " +
                     dims(curr));
  }
  if (next && !next->same_size(curr)) {
    throw ShapeError("frame dimensions differ: next " + dims(*next) + " vs curr " +
                     dims(curr));
  }

  GrayImage averaged;
  const GrayImage* base = &curr;
  if (average_spatial) {
    averaged = GrayImage(curr.width, curr.height);
    for (std::size_t i = 0; i < averaged.data.size(); ++i) {
      averaged.data[i] = 0.5 * (prev.data[i] + curr.data[i]);
    }
    base = &averaged;
  }

  GradientTensor t;
  t.ix = derivative(*base, Axis::X, 1);
  t.iy = derivative(*base, Axis::Y, 1);
  t.ixx = derivative(*base, Axis::X, 2);
  t.iyy = derivative(*base, Axis::Y, 2);
  t.ixy = mixed_derivative_xy(*base);

  t.it = GrayImage(curr.width, curr.height);
  for (std::size_t i = 0; i < t.it.data.size(); ++i) {
    t.it.data[i] = curr.data[i] - prev.data[i];
  }
  t.ixt = derivative(t.it, Axis::X, 1);
  t.iyt = derivative(t.it, Axis::Y, 1);

  t.itt = GrayImage(curr.width, curr.height);
  if (next) {
    for (std::size_t i = 0; i < t.itt.data.size(); ++i) {
      t.itt.data[i] = next->data[i] - 2.0 * curr.data[i] + prev.data[i];
    }
  }
  return t;
}

ConstraintField compose_first_order(const GradientTensor& t) {
  return ConstraintField{t.ix, t.iy, t.it};
}

ConstraintField compose_second_order(const GradientTensor& t) {
  ConstraintField c;
  c.cx = GrayImage(t.width(), t.height());
  c.cy = GrayImage(t.width(), t.height());
  c.ct = GrayImage(t.width(), t.height());
  for (std::size_t i = 0; i < c.cx.data.size(); ++i) {
    c.cx.data[i] = t.ixy.data[i] + 0.5 * t.ixx.data[i] + t.ix.data[i];
    c.cy.data[i] = t.iyt.data[i] + 0.5 * t.iyy.data[i] + t.iy.data[i];
    c.ct.data[i] = t.ixt.data[i] + 0.5 * t.itt.data[i] + t.it.data[i];
  }
  return c;
}

ConstraintField compose(const GradientTensor& t, ConstraintOrder order) {
  return order == ConstraintOrder::first ? compose_first_order(t)
                                         : compose_second_order(t);
}

}  // namespace hoflow
