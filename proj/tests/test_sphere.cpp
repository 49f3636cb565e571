#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ptlab/error.hpp"
#include "ptlab/sphere.hpp"

namespace ptlab {
namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInternal;
}

Vector v3(double a, double b, double c) { return Vector{{a, b, c}}; }

Vector random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return v3(g(rng), g(rng), g(rng)).normalized();
}

// Unit tangent at x orthogonal to x.
Vector random_tangent(std::mt19937_64& rng, const Vector& x) {
  Vector v = random_unit(rng);
  v -= v.dot(x) * x;
  return v.normalized();
}

TEST(Geodesic, Examples) {
  const Vector n = v3(0, 0, 1), e = v3(1, 0, 0);
  EXPECT_EQ(geodesic_cost(n, n), 0.0);
  EXPECT_NEAR(geodesic_cost(n, -n), kPi * kPi / 2, 1e-15);
  EXPECT_NEAR(geodesic_cost(n, e), kPi * kPi / 8, 1e-15);
  EXPECT_NEAR(geodesic_distance(n, e), kPi / 2, 1e-15);
}

TEST(Geodesic, SymmetricAndZeroOnlyOnDiagonal) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10000; ++t) {
    const Vector x = random_unit(rng), y = random_unit(rng);
    const double cxy = geodesic_cost(x, y);
    EXPECT_EQ(cxy, geodesic_cost(y, x));
    const double d = geodesic_distance(x, y);
    if (d >= 1e-8) EXPECT_GT(cxy, 0.0);
    EXPECT_GE(cxy, 0.0);
  }
}

TEST(ExpLog, RoundTrip) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> len(0.0, kPi - 1e-3);
  for (int t = 0; t < 1000; ++t) {
    const Vector x = random_unit(rng);
    const Vector v = len(rng) * random_tangent(rng, x);
    const Vector y = exp_map(x, v);
    EXPECT_NEAR(y.norm(), 1.0, 1e-12);
    EXPECT_LE((log_map(x, y) - v).norm(), 1e-10);
    EXPECT_NEAR(geodesic_distance(x, y), v.norm(), 1e-10);
  }
}

TEST(ExpLog, AntipodeIsCutLocus) {
  const Vector n = v3(0, 0, 1);
  EXPECT_EQ(kind_of([&] { log_map(n, -n); }), ErrorKind::kCutLocus);
  EXPECT_EQ(log_map(n, n).norm(), 0.0);
}

TEST(SphereCost, GradientMatchesFiniteDifference) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> sep(0.1, kPi - 0.1);
  const SphereCost cost;
  const double h = 1e-5;
  for (int t = 0; t < 500; ++t) {
    const Vector x = random_unit(rng);
    const Vector y = exp_map(x, sep(rng) * random_tangent(rng, x));
    const Vector g = cost.grad_x(x, y);
    EXPECT_NEAR(g.dot(x), 0.0, 1e-12);
    const Vector v = random_tangent(rng, x);
    const double fd =
        (cost.value(exp_map(x, h * v), y) - cost.value(exp_map(x, -h * v), y)) / (2 * h);
    EXPECT_NEAR(fd, g.dot(v), 1e-6);
  }
}

TEST(SphereCost, OnlyFirstOrder) {
  const SphereCost cost;
  EXPECT_EQ(cost.smoothness_order(), 1);
  EXPECT_EQ(kind_of([&] { cost.require_order(2, "hessian"); }), ErrorKind::kCapability);
}

TEST(SphereCap, ContainsAndAngularRadius) {
  const SphericalCap cap(SpherePoint::south(), 1.0 / 8.0);
  EXPECT_NEAR(std::cos(cap.angular_radius()), 7.0 / 8.0, 1e-15);
  EXPECT_TRUE(cap.contains(v3(0, 0, -1)));
  EXPECT_FALSE(cap.contains(v3(1, 0, 0)));
  EXPECT_EQ(kind_of([] { SphericalCap(SpherePoint::north(), -0.1); }),
            ErrorKind::kRejectedInput);
}

TEST(SpherePoint, RejectsZero) {
  EXPECT_EQ(kind_of([] { SpherePoint(Vector::Zero(3)); }), ErrorKind::kRejectedInput);
}

TEST(FibonacciSphere, UnitAndBalanced) {
  const auto pts = fibonacci_sphere(2000);
  ASSERT_EQ(pts.size(), 2000u);
  Vector mean = Vector::Zero(3);
  for (const auto& p : pts) {
    EXPECT_NEAR(p.norm(), 1.0, 1e-12);
    mean += p;
  }
  EXPECT_LT((mean / 2000.0).norm(), 1e-3);
}

TEST(CapSample, InsideCap) {
  const SpherePoint c(v3(1, 1, 0));
  const auto pts = cap_sample(c, 0.3, 400);
  ASSERT_EQ(pts.size(), 400u);
  for (const auto& p : pts) EXPECT_LE(geodesic_distance(p, c.vec()), 0.3 + 1e-12);
}

TEST(CutLocusMargin, EmptyPlanIsPi) {
  TransportPlan plan;
  EXPECT_EQ(cut_locus_margin(plan, {}, {}), kPi);
}

TEST(CapExample, NorthStaysInactive) {
  CapExampleOptions opt;
  opt.resolution = 600;
  const auto rep = run_cap_example(opt);
  EXPECT_TRUE(rep.north_inactive);
  EXPECT_EQ(rep.north_active_mass, 0.0);
  EXPECT_EQ(rep.long_arcs, 0u);
  EXPECT_GT(rep.cut_margin, 0.0);
  EXPECT_NEAR(rep.tan_theta, std::sqrt(15.0) / 7.0, 1e-15);
  EXPECT_TRUE(rep.chain_holds);
  EXPECT_LE(2.0 * rep.theta, 8.0 / 7.0);
  EXPECT_GT(rep.mass, 0.0);
  for (const auto& [i, j, w] : rep.plan.entries) {
    EXPECT_LT(geodesic_distance(rep.sources[i], rep.targets[j]), 15.0 / 8.0);
  }
}

TEST(AnnulusDemo, CapOppositeBaseFails) {
  const auto rep = annulus_image_demo();
  EXPECT_FALSE(rep.pass);
  EXPECT_FALSE(rep.degenerate);
}

TEST(AnnulusDemo, SmallBallAwayFromCutLocusPasses) {
  CapImageOptions opt;
  opt.cap = SphericalCap(SpherePoint(v3(std::sin(kPi / 4), 0, std::cos(kPi / 4))), 0.02);
  EXPECT_TRUE(annulus_image_demo(opt).pass);
}

TEST(AnnulusDemo, VanishingCapIsDegenerate) {
  CapImageOptions opt;
  opt.cap = SphericalCap(SpherePoint::south(), 0.0);
  EXPECT_TRUE(annulus_image_demo(opt).degenerate);
}

}  // namespace
}  // namespace ptlab
