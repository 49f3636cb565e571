#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ptlab/cost_model.hpp"

namespace ptlab {

// Cost of the form c(x, y) = h(|x - y|^2) with closed-form derivatives.
// profile(s) returns {h, h', h'', h''', h''''} at s = |x - y|^2.
class RadialCost : public CostModel {
 public:
  bool has_analytic_derivatives() const override { return true; }

  double value(const Point& x, const Point& y) const override;
  Vector grad_x(const Point& x, const Point& y) const override;
  Vector grad_y(const Point& x, const Point& y) const override;
  Matrix hess_xx(const Point& x, const Point& y) const override;
  Matrix hess_xy(const Point& x, const Point& y) const override;
  Tensor3 d3_xxy(const Point& x, const Point& y) const override;
  Tensor3 d3_xyy(const Point& x, const Point& y) const override;
  Tensor4 d4_xxyy(const Point& x, const Point& y) const override;

  virtual std::array<double, 5> profile(double s) const = 0;

  // Squared separations below floor^2 are evaluated at floor^2.
  double separation_floor() const { return floor_; }
  void set_separation_floor(double floor) { floor_ = floor; }

 protected:
  double clamp_s(double s) const;

 private:
  Vector d1(const Point& u) const;
  Matrix d2(const Point& u) const;
  Tensor3 d3(const Point& u) const;
  Tensor4 d4(const Point& u) const;

  double floor_ = 0.0;
};

// |x - y|^2 / 2
class QuadraticCost final : public RadialCost {
 public:
  std::string id() const override { return "quadratic"; }
  int smoothness_order() const override { return 4; }
  std::array<double, 5> profile(double s) const override;
};

// -log|x - y|, evaluated no closer than the separation floor (default 1e-6).
class LogCost final : public RadialCost {
 public:
  LogCost() { set_separation_floor(1e-6); }
  std::string id() const override { return "log"; }
  int smoothness_order() const override { return 4; }
  std::array<double, 5> profile(double s) const override;
};

// sqrt(1 + |x - y|^2)
class SqrtPlusCost final : public RadialCost {
 public:
  std::string id() const override { return "sqrtplus"; }
  int smoothness_order() const override { return 4; }
  std::array<double, 5> profile(double s) const override;
};

// Wraps any cost and answers every derivative by finite differences of the
// wrapped value, regardless of whether closed forms exist.
class FiniteDifferenceCost final : public CostModel {
 public:
  explicit FiniteDifferenceCost(std::shared_ptr<const CostModel> inner,
                                FdSteps steps = {});
  std::string id() const override { return inner_->id() + "+fd"; }
  int smoothness_order() const override { return inner_->smoothness_order(); }
  int dimension() const override { return inner_->dimension(); }
  double value(const Point& x, const Point& y) const override {
    return inner_->value(x, y);
  }

 private:
  std::shared_ptr<const CostModel> inner_;
};

// Value-only cost built from a callable; derivatives by finite differences.
class FunctionCost final : public CostModel {
 public:
  using Evaluator = std::function<double(const Point&, const Point&)>;
  FunctionCost(std::string id, int order, Evaluator eval, int dimension = 0);

  std::string id() const override { return id_; }
  int smoothness_order() const override { return order_; }
  int dimension() const override { return dim_; }
  double value(const Point& x, const Point& y) const override {
    return eval_(x, y);
  }

 private:
  std::string id_;
  int order_;
  Evaluator eval_;
  int dim_;
};

// Builds cost models by string identifier.  Built-ins: "quadratic", "log",
// "sqrtplus", "sphere".  Further ids can be registered at runtime.
class CostRegistry {
 public:
  using Factory = std::function<std::shared_ptr<const CostModel>()>;

  static CostRegistry& instance();

  void add(const std::string& id, Factory factory);
  std::shared_ptr<const CostModel> make(const std::string& id) const;
  std::vector<std::string> ids() const;
  bool contains(const std::string& id) const;

 private:
  CostRegistry();
  std::map<std::string, Factory> factories_;
};

inline std::shared_ptr<const CostModel> make_cost(const std::string& id) {
  return CostRegistry::instance().make(id);
}

}  // namespace ptlab
