#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ptlab/cost_model.hpp"
#include "ptlab/geometry_checks.hpp"
#include "ptlab/solver.hpp"

namespace ptlab {

// Unit vector in R^(n+1).
class SpherePoint {
 public:
  // Normalises v; rejects zero or non-finite input.
  explicit SpherePoint(const Vector& v);
  static SpherePoint north(int ambient = 3);
  static SpherePoint south(int ambient = 3);

  const Vector& vec() const { return v_; }
  int ambient_dimension() const { return static_cast<int>(v_.size()); }

 private:
  Vector v_;
};

// {v : <v, center> >= 1 - height}; height is the Euclidean depth from the pole.
struct SphericalCap {
  SpherePoint center = SpherePoint::north();
  double height = 0.0;

  SphericalCap(SpherePoint c, double h);
  bool contains(const Vector& v) const;
  double angular_radius() const;
};

double geodesic_distance(const Vector& x, const Vector& y);
// d(x, y)^2 / 2 with the inner product clamped to [-1, 1].
double geodesic_cost(const Vector& x, const Vector& y);

// Inverse exponential map at base.  Throws kCutLocus within 1e-6 of the
// antipode.
Vector log_map(const Vector& base, const Vector& x);
Vector exp_map(const Vector& base, const Vector& v);

// d^2 / 2 on the unit sphere in any ambient dimension.  Only the first
// x-gradient, -log_x(y), is provided.
class SphereCost final : public CostModel {
 public:
  std::string id() const override { return "sphere"; }
  int smoothness_order() const override { return 1; }
  bool has_analytic_derivatives() const override { return true; }
  double value(const Point& x, const Point& y) const override;
  Vector grad_x(const Point& x, const Point& y) const override;
  Vector grad_y(const Point& x, const Point& y) const override;
};

// Quasi-uniform lattice of count points on S^2.
std::vector<Point> fibonacci_sphere(std::size_t count);

// Sunflower sample of the geodesic ball of the given angular radius around
// center on S^2, pushed through exp_center.
std::vector<Point> cap_sample(const SpherePoint& center, double angular_radius,
                              std::size_t count);

// min over shipped pairs of pi - d(x, T(x)); pi for an empty plan.
double cut_locus_margin(const TransportPlan& plan, const std::vector<Point>& sources,
                        const std::vector<Point>& targets);

struct CapExampleOptions {
  std::size_t resolution = 1000;
  double rho = 0.1;
  double mass_margin = 1e-9;
  double cap_height = 1.0 / 16.0;
  double enlarged_height = 1.0 / 8.0;
  double north_height = 1.0 / 16.0;
};

struct SphereBoundarySample {
  std::size_t source = 0;
  double polar = 0.0;
  double azimuth = 0.0;
};

struct CapExampleReport {
  std::size_t source_count = 0;
  std::size_t target_count = 0;
  double f_on_cap = 0.0;         // integral of f over Lambda
  double g_on_cap = 0.0;         // integral of g over Lambda
  double enlarged_excess = 0.0;  // integral of f over the enlarged cap minus g_on_cap
  double mass = 0.0;
  double objective = 0.0;
  double north_active_mass = 0.0;
  double max_transport_distance = 0.0;
  double cut_margin = 0.0;
  std::size_t long_arcs = 0;  // shipped pairs at distance >= 15/8
  double tan_theta = 0.0;
  double theta = 0.0;
  bool chain_holds = false;  // 2 theta <= 8/7 < 15/8
  bool north_inactive = false;
  std::vector<Point> sources;
  std::vector<Point> targets;
  TransportPlan plan;
  std::vector<SphereBoundarySample> boundary;
};

CapExampleReport run_cap_example(const CapExampleOptions& options = {});

struct CapImageOptions {
  SpherePoint base = SpherePoint::north();
  SphericalCap cap{SpherePoint::south(), 1.0 / 16.0};
  std::size_t samples = 600;
  double cut_margin = 1e-3;
};

// Image of the cap under y -> grad_x c(base, y) checked for c-convexity.
PredicateReport annulus_image_demo(const CapImageOptions& options = {});

}  // namespace ptlab
