#pragma once

#include <string>

#include "ptlab/types.hpp"

namespace ptlab {

// Central-difference steps used when a cost has no analytic derivatives.
struct FdSteps {
  double low_order = 1e-4;   // first and second derivatives
  double high_order = 1e-2;  // third and fourth derivatives
};

// A transport cost c(x, y) with derivatives up to smoothness_order().
//
// Index conventions follow the mixed-derivative notation: indices before the
// comma differentiate in x, indices after it in y.  hess_xy(i, j) is c_{i,j},
// d3_xxy(i, j, m) is c_{ij,m}, d3_xyy(n, r, s) is c_{n,rs} and
// d4_xxyy(i, j, r, s) is c_{ij,rs}.
//
// The base class answers every derivative by central finite differences of
// value(); costs with closed forms override them.  Asking for an order above
// smoothness_order() throws ErrorKind::kCapability.
//
// Implementations must be safe to call concurrently from several threads.
class CostModel {
 public:
  virtual ~CostModel() = default;

  virtual std::string id() const = 0;
  virtual int smoothness_order() const = 0;
  // 0 when the cost accepts any dimension.
  virtual int dimension() const { return 0; }
  virtual bool has_analytic_derivatives() const { return false; }

  virtual double value(const Point& x, const Point& y) const = 0;

  virtual Vector grad_x(const Point& x, const Point& y) const;
  virtual Vector grad_y(const Point& x, const Point& y) const;
  virtual Matrix hess_xx(const Point& x, const Point& y) const;
  virtual Matrix hess_xy(const Point& x, const Point& y) const;
  virtual Tensor3 d3_xxy(const Point& x, const Point& y) const;
  virtual Tensor3 d3_xyy(const Point& x, const Point& y) const;
  virtual Tensor4 d4_xxyy(const Point& x, const Point& y) const;

  const FdSteps& fd_steps() const { return steps_; }
  void set_fd_steps(const FdSteps& steps) { steps_ = steps; }

  void require_order(int order, const char* what) const;

 private:
  FdSteps steps_;
};

}  // namespace ptlab
