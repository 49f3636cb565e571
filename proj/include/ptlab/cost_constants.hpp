#pragma once

#include <cstddef>

#include "ptlab/cost_model.hpp"

namespace ptlab {

// Sampled stand-ins for the infima/suprema over Omega x Lambda.
struct CostConstants {
  double b0 = 0.0;  // min c(x, y)
  double b1 = 0.0;  // min |grad_x c(x, y)|
  double c2 = 0.0;  // max ||hess_xx c(x, y)||_op
  std::size_t pairs_sampled = 0;
  bool b1_warning = false;  // b1 at or below the tolerance
};

struct GradientBound {
  double value = 0.0;
  bool warning = false;
};

double estimate_b0(const CostModel& cost, const DomainSample& omega,
                   const DomainSample& lambda);

GradientBound estimate_b1(const CostModel& cost, const DomainSample& omega,
                          const DomainSample& lambda, double tolerance = 1e-9);

double estimate_c2(const CostModel& cost, const DomainSample& omega,
                   const DomainSample& lambda);

// All three at once; c2 is left at 0 for order-1 costs.
CostConstants estimate_constants(const CostModel& cost, const DomainSample& omega,
                                 const DomainSample& lambda,
                                 double b1_tolerance = 1e-9);

// Sampled left-twist check: y -> grad_x c(x, y) separates every pair of
// targets by more than tolerance.
bool check_twist(const CostModel& cost, const Point& x, const DomainSample& lambda,
                 double tolerance = 1e-9);

// det(c_{i,j}(x, y)).
double check_nondegeneracy(const CostModel& cost, const Point& x, const Point& y);

}  // namespace ptlab
