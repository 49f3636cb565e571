#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ptlab/cost_constants.hpp"
#include "ptlab/costs.hpp"
#include "ptlab/error.hpp"
#include "ptlab/finite_difference.hpp"
#include "ptlab/sphere.hpp"

namespace ptlab {
namespace {

Point p2(double a, double b) { return Point{{a, b}}; }

DomainSample sample(std::vector<Point> pts, SampleRole role = SampleRole::kSource) {
  return DomainSample{std::move(pts), role};
}

DomainSample random_cloud(std::mt19937_64& rng, int count, double shift) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  DomainSample s;
  for (int i = 0; i < count; ++i) s.points.push_back(p2(unit(rng) + shift, unit(rng)));
  return s;
}

double rel_err(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

template <int R>
double rel_err(const Tensor<R>& a, const Tensor<R>& b) {
  double diff = 0.0, scale = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    diff = std::max(diff, std::abs(a.data()[k] - b.data()[k]));
    scale = std::max(scale, std::abs(b.data()[k]));
  }
  return diff / scale;
}

TEST(QuadraticCost, ValueAndDerivatives) {
  auto c = make_cost("quadratic");
  const Point x = p2(1.0, 2.0), y = p2(4.0, 6.0);
  EXPECT_DOUBLE_EQ(c->value(x, y), 12.5);
  EXPECT_EQ(c->grad_x(x, y), p2(-3.0, -4.0));
  EXPECT_EQ(c->grad_y(x, y), p2(3.0, 4.0));
  EXPECT_EQ(c->hess_xx(x, y), Matrix::Identity(2, 2));
  EXPECT_EQ(c->hess_xy(x, y), -Matrix::Identity(2, 2));
  EXPECT_DOUBLE_EQ(c->value(x, x), 0.0);
}

TEST(LogCost, EvaluatesAtSeparationFloor) {
  auto c = make_cost("log");
  const Point x = p2(0.5, 0.5);
  EXPECT_NEAR(c->value(x, x), -std::log(1e-6), 1e-9);
  EXPECT_NEAR(c->value(p2(0, 0), p2(3, 4)), -std::log(5.0), 1e-15);
}

TEST(SqrtPlusCost, Value) {
  auto c = make_cost("sqrtplus");
  EXPECT_DOUBLE_EQ(c->value(p2(0, 0), p2(0, 0)), 1.0);
  EXPECT_NEAR(c->value(p2(0, 0), p2(3, 4)), std::sqrt(26.0), 1e-15);
}

TEST(EstimateB0, NearestCornerOfFarSquare) {
  auto c = make_cost("quadratic");
  const auto omega = sample({p2(0, 0), p2(1, 0), p2(0, 1), p2(1, 1), p2(0.5, 0.5)});
  const auto lambda = sample({p2(3, 3), p2(4, 3), p2(3, 4), p2(4, 4)}, SampleRole::kTarget);
  EXPECT_NEAR(estimate_b0(*c, omega, lambda), 4.0, 1e-12);
  const auto b1 = estimate_b1(*c, omega, lambda);
  EXPECT_NEAR(b1.value, 2.0 * std::sqrt(2.0), 1e-12);
  EXPECT_FALSE(b1.warning);
}

TEST(EstimateB0, SharedPointGivesZero) {
  auto c = make_cost("quadratic");
  const auto omega = sample({p2(0, 0), p2(0.3, 0.2)});
  const auto lambda = sample({p2(0.3, 0.2), p2(2, 2)}, SampleRole::kTarget);
  EXPECT_EQ(estimate_b0(*c, omega, lambda), 0.0);
  const auto b1 = estimate_b1(*c, omega, lambda);
  EXPECT_EQ(b1.value, 0.0);
  EXPECT_TRUE(b1.warning);
}

TEST(EstimateB0, LogCostMatchesExhaustiveScan) {
  std::mt19937_64 rng(5);
  auto c = make_cost("log");
  const auto omega = random_cloud(rng, 5, 0.0);
  const auto lambda = random_cloud(rng, 5, 2.0);
  double b0 = INFINITY, b1 = INFINITY;
  for (const auto& x : omega.points) {
    for (const auto& y : lambda.points) {
      const double r = std::hypot(x[0] - y[0], x[1] - y[1]);
      b0 = std::min(b0, -std::log(r));
      b1 = std::min(b1, 1.0 / r);
    }
  }
  EXPECT_NEAR(estimate_b0(*c, omega, lambda), b0, 1e-12);
  EXPECT_NEAR(estimate_b1(*c, omega, lambda).value, b1, 1e-12);
}

TEST(EstimateB0, QuadraticMatchesMinimumDistanceExactly) {
  std::mt19937_64 rng(6);
  auto c = make_cost("quadratic");
  for (int t = 0; t < 20; ++t) {
    const auto omega = random_cloud(rng, 7, 0.0);
    const auto lambda = random_cloud(rng, 6, 0.5);
    double d = INFINITY;
    for (const auto& x : omega.points) {
      for (const auto& y : lambda.points) d = std::min(d, (x - y).norm());
    }
    EXPECT_NEAR(estimate_b0(*c, omega, lambda), d * d / 2.0, 1e-12);
    EXPECT_NEAR(estimate_b1(*c, omega, lambda).value, d, 1e-12);
  }
}

TEST(EstimateConstants, PermutationInvariant) {
  std::mt19937_64 rng(8);
  auto c = make_cost("sqrtplus");
  auto omega = random_cloud(rng, 9, 0.0);
  auto lambda = random_cloud(rng, 7, 1.5);
  const auto a = estimate_constants(*c, omega, lambda);
  std::shuffle(omega.points.begin(), omega.points.end(), rng);
  std::shuffle(lambda.points.begin(), lambda.points.end(), rng);
  const auto b = estimate_constants(*c, omega, lambda);
  EXPECT_EQ(a.b0, b.b0);
  EXPECT_EQ(a.b1, b.b1);
  EXPECT_EQ(a.c2, b.c2);
}

TEST(EstimateC2, QuadraticIsOne) {
  auto c = make_cost("quadratic");
  std::mt19937_64 rng(9);
  EXPECT_NEAR(estimate_c2(*c, random_cloud(rng, 5, 0), random_cloud(rng, 5, 3)), 1.0, 1e-15);
}

TEST(EstimateC2, LogAtUnitSeparation) {
  // Hessian of -log r at r = 1 has eigenvalues +1 (radial) and -1.
  auto c = make_cost("log");
  EXPECT_NEAR(estimate_c2(*c, sample({p2(0, 0)}), sample({p2(0.6, 0.8)})), 1.0, 1e-12);
}

TEST(EstimateC2, OrderOneCostRaisesCapability) {
  const SphereCost sphere;
  const auto s = sample({Point{{0.0, 0.0, 1.0}}});
  try {
    estimate_c2(sphere, s, s);
    FAIL() << "expected capability error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapability);
  }
}

TEST(EstimateB0, DimensionMismatchRejected) {
  auto c = make_cost("quadratic");
  EXPECT_THROW(estimate_b0(*c, sample({p2(0, 0)}), sample({Point{{1.0, 2.0, 3.0}}})), Error);
}

TEST(CheckTwist, QuadraticDistinctTargets) {
  auto c = make_cost("quadratic");
  std::mt19937_64 rng(10);
  EXPECT_TRUE(check_twist(*c, p2(0.2, 0.3), random_cloud(rng, 30, 1.0)));
}

TEST(CheckTwist, DuplicatedTargetsDetected) {
  const FunctionCost quartic(
      "quartic", 2, [](const Point& x, const Point& y) { return std::pow((x - y).norm(), 4); });
  const auto lambda = sample({Point{{1.0}}, Point{{2.0}}, Point{{2.0}}});
  EXPECT_FALSE(check_twist(quartic, Point{{0.0}}, lambda));
}

TEST(CheckTwist, LogRandomCloud) {
  auto c = make_cost("log");
  std::mt19937_64 rng(11);
  const auto lambda = random_cloud(rng, 40, 2.0);
  EXPECT_TRUE(check_twist(*c, p2(0.5, 0.5), lambda));
}

TEST(CheckNondegeneracy, QuadraticSignAlternates) {
  auto c = make_cost("quadratic");
  for (int n = 1; n <= 3; ++n) {
    const Point x = Point::Zero(n), y = Point::Ones(n);
    EXPECT_EQ(check_nondegeneracy(*c, x, y), n % 2 == 0 ? 1.0 : -1.0);
  }
}

TEST(CheckNondegeneracy, QuarticDegenerateOnDiagonal) {
  const FunctionCost quartic(
      "quartic", 2, [](const Point& x, const Point& y) { return std::pow((x - y).norm(), 4); });
  EXPECT_NEAR(check_nondegeneracy(quartic, Point{{0.3}}, Point{{0.3}}), 0.0, 1e-6);
}

TEST(CheckNondegeneracy, LogMixedDeterminant) {
  // c_{i,j} = (I - 2 u u^T) / r^2 with u the unit separation: det = -1 / r^4.
  auto c = make_cost("log");
  EXPECT_NEAR(check_nondegeneracy(*c, p2(0, 0), p2(1.2, 1.6)), -1.0 / 16.0, 1e-14);
}

class FiniteDifferenceAgreement : public ::testing::TestWithParam<const char*> {};

TEST_P(FiniteDifferenceAgreement, LowOrdersAtThousandPoints) {
  auto analytic = make_cost(GetParam());
  const FiniteDifferenceCost fd(analytic);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0.0;
  int checked = 0;
  while (checked < 1000) {
    const Point x = p2(unit(rng), unit(rng)), y = p2(unit(rng), unit(rng));
    if ((x - y).norm() < 0.1) continue;
    ++checked;
    worst = std::max(worst, rel_err(fd.grad_x(x, y), analytic->grad_x(x, y)));
    worst = std::max(worst, rel_err(fd.grad_y(x, y), analytic->grad_y(x, y)));
    worst = std::max(worst, rel_err(fd.hess_xx(x, y), analytic->hess_xx(x, y)));
    worst = std::max(worst, rel_err(fd.hess_xy(x, y), analytic->hess_xy(x, y)));
  }
  EXPECT_LE(worst, 1e-5);
}

TEST_P(FiniteDifferenceAgreement, HighOrdersAwayFromDiagonal) {
  // The declared 1e-2 step leaves an O(h^2 / r^2) truncation error in third
  // and fourth derivatives, so the comparison keeps r >= 0.5.
  auto analytic = make_cost(GetParam());
  const FiniteDifferenceCost fd(analytic);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0.0;
  int checked = 0;
  while (checked < 200) {
    const Point x = p2(unit(rng), unit(rng)), y = p2(unit(rng), unit(rng));
    if ((x - y).norm() < 0.5) continue;
    ++checked;
    worst = std::max(worst, rel_err(fd.d3_xxy(x, y), analytic->d3_xxy(x, y)));
    worst = std::max(worst, rel_err(fd.d3_xyy(x, y), analytic->d3_xyy(x, y)));
    worst = std::max(worst, rel_err(fd.d4_xxyy(x, y), analytic->d4_xxyy(x, y)));
  }
  EXPECT_LE(worst, 1e-2);
}

INSTANTIATE_TEST_SUITE_P(BuiltIns, FiniteDifferenceAgreement,
                         ::testing::Values("quadratic", "log", "sqrtplus"));

TEST(AnalyticDerivatives, LogFourthOrderClosedForm) {
  // With z = x - y in 1D: c_xxy = 2 / z^3 and c_xxyy = 6 / z^4.
  auto c = make_cost("log");
  const Point x{{0.0}}, y{{2.0}};
  EXPECT_NEAR(c->d4_xxyy(x, y)(0, 0, 0, 0), 6.0 / 16.0, 1e-14);
  EXPECT_NEAR(c->d3_xxy(x, y)(0, 0, 0), -2.0 / 8.0, 1e-14);
}

TEST(DerivativeQuality, SmoothCostHasNoWarning) {
  auto c = make_cost("sqrtplus");
  const auto q = fd::derivative_quality(FiniteDifferenceCost(c), p2(0, 0), p2(1, 0.5));
  EXPECT_FALSE(q.warning);
  EXPECT_LT(q.max_mismatch, 1e-3);
}

TEST(DerivativeQuality, NearSingularityWarns) {
  auto c = make_cost("log");
  const auto q = fd::derivative_quality(FiniteDifferenceCost(c), p2(0, 0), p2(0.03, 0));
  EXPECT_TRUE(q.warning);
}

TEST(CostModel, CapabilityGuard) {
  const FunctionCost first("first", 1, [](const Point& x, const Point& y) {
    return (x - y).squaredNorm();
  });
  EXPECT_NO_THROW(first.grad_x(p2(0, 0), p2(1, 1)));
  try {
    first.hess_xx(p2(0, 0), p2(1, 1));
    FAIL() << "expected capability error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapability);
  }
}

TEST(CostRegistry, UnknownIdListsRegisteredIds) {
  try {
    make_cost("manhattan");
    FAIL() << "expected error";
  } catch (const Error& e) {
    const std::string msg = e.what();
    for (const char* id : {"quadratic", "log", "sqrtplus", "sphere"}) {
      EXPECT_NE(msg.find(id), std::string::npos) << msg;
    }
  }
}

TEST(CostRegistry, CustomCostRegistration) {
  CostRegistry::instance().add("test_l2", [] {
    return std::make_shared<FunctionCost>("test_l2", 2, [](const Point& x, const Point& y) {
      return (x - y).squaredNorm();
    });
  });
  auto c = make_cost("test_l2");
  EXPECT_DOUBLE_EQ(c->value(p2(0, 0), p2(1, 2)), 5.0);
  const Vector g = c->grad_x(p2(0, 0), p2(1, 2));
  EXPECT_NEAR(g[0], -2.0, 1e-7);
  EXPECT_NEAR(g[1], -4.0, 1e-7);
}

}  // namespace
}  // namespace ptlab
