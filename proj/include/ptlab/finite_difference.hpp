#pragma once

#include <span>

#include "ptlab/cost_model.hpp"

namespace ptlab::fd {

// One differentiation direction in the joint (x, y) space.
struct Axis {
  bool in_y = false;
  int index = 0;
};

// Mixed partial derivative of cost.value along the given axes using the
// tensor-product central stencil with step h (2^k evaluations).
double mixed_partial(const CostModel& cost, const Point& x, const Point& y,
                     std::span<const Axis> axes, double h);

Vector grad_x(const CostModel& cost, const Point& x, const Point& y, double h);
Vector grad_y(const CostModel& cost, const Point& x, const Point& y, double h);
Matrix hess_xx(const CostModel& cost, const Point& x, const Point& y, double h);
Matrix hess_xy(const CostModel& cost, const Point& x, const Point& y, double h);
Tensor3 d3_xxy(const CostModel& cost, const Point& x, const Point& y, double h);
Tensor3 d3_xyy(const CostModel& cost, const Point& x, const Point& y, double h);
Tensor4 d4_xxyy(const CostModel& cost, const Point& x, const Point& y, double h);

// Richardson cross-check: every available derivative is evaluated at its
// declared step and at half that step.  mismatch = |D(h) - D(h/2)| /
// max(|D(h/2)|, 1), maximised over entries and orders.
struct QualityReport {
  double max_mismatch = 0.0;
  int worst_order = 0;
  bool warning = false;  // max_mismatch > threshold
};

QualityReport derivative_quality(const CostModel& cost, const Point& x,
                                 const Point& y, double threshold = 1e-3);

}  // namespace ptlab::fd
