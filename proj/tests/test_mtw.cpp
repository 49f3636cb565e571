#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "ptlab/costs.hpp"
#include "ptlab/error.hpp"
#include "ptlab/mtw.hpp"
#include "ptlab/sphere.hpp"

namespace ptlab {
namespace {

using Pairs = std::vector<std::pair<Point, Point>>;

Pairs random_pairs(std::mt19937_64& rng, int n, int count, double lo, double hi) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss;
  Pairs out;
  for (int t = 0; t < count; ++t) {
    Point x(n), dir(n);
    for (int i = 0; i < n; ++i) {
      x[i] = unit(rng);
      dir[i] = gauss(rng);
    }
    out.emplace_back(x, x + (lo + (hi - lo) * unit(rng)) * dir.normalized());
  }
  return out;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kInternal;
}

TEST(MtwTensor, QuadraticIsZero) {
  auto c = make_cost("quadratic");
  const auto t = mtw_tensor(*c, Point{{0.1, 0.7}}, Point{{2.0, -1.0}});
  ASSERT_EQ(t.entries.size(), 16u);
  for (double v : t.entries.data()) EXPECT_EQ(v, 0.0);
}

// Exact values at x = (0, 0), y = (1, 0), derived symbolically from the
// tensor formula with c = -log|x - y|.
TEST(MtwTensor, LogGoldenValues) {
  const double golden[2][2][2][2] = {{{{-2, 0}, {0, 2}}, {{0, -2}, {-2, 0}}},
                                     {{{0, -2}, {-2, 0}}, {{2, 0}, {0, -2}}}};
  auto analytic = make_cost("log");
  const FiniteDifferenceCost coarse(analytic, FdSteps{1e-4, 1e-2});
  const FiniteDifferenceCost fine(analytic, FdSteps{1e-4, 5e-3});
  const Point x{{0.0, 0.0}}, y{{1.0, 0.0}};
  const auto a = mtw_tensor(*analytic, x, y);
  const auto tc = mtw_tensor(coarse, x, y);
  const auto tf = mtw_tensor(fine, x, y);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          const double g = golden[i][j][k][l];
          EXPECT_NEAR(a.entries(i, j, k, l), g, 1e-12);
          // The declared step alone carries an O(h^2) truncation error.
          EXPECT_NEAR(tc.entries(i, j, k, l), g, 1e-2);
          const double richardson = (4.0 * tf.entries(i, j, k, l) - tc.entries(i, j, k, l)) / 3.0;
          EXPECT_NEAR(richardson, g, 1e-4);
        }
      }
    }
  }
}

TEST(MtwTensor, SymmetryOnBuiltIns) {
  std::mt19937_64 rng(1);
  for (const char* id : {"quadratic", "log", "sqrtplus"}) {
    auto c = make_cost(id);
    for (const auto& [x, y] : random_pairs(rng, 3, 100, 0.3, 2.0)) {
      const auto t = mtw_tensor(*c, x, y);
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          for (int k = 0; k < 3; ++k) {
            for (int l = 0; l < 3; ++l) {
              const double v = t.entries(i, j, k, l);
              ASSERT_TRUE(std::isfinite(v));
              EXPECT_NEAR(v, t.entries(j, i, k, l), 1e-8) << id;
              EXPECT_NEAR(v, t.entries(i, j, l, k), 1e-8) << id;
            }
          }
        }
      }
    }
  }
}

TEST(MtwTensor, OneDimensionalTensorComputed) {
  auto c = make_cost("log");
  const auto t = mtw_tensor(*c, Point{{0.0}}, Point{{1.0}});
  EXPECT_EQ(t.dim(), 1);
  EXPECT_EQ(kind_of([&] { a3_infimum(*c, {{Point{{0.0}}, Point{{1.0}}}}, 8); }),
            ErrorKind::kDegenerate);
}

TEST(MtwTensor, SingularMixedMatrixRejected) {
  const FunctionCost quartic("quartic", 4, [](const Point& x, const Point& y) {
    return std::pow((x - y).squaredNorm(), 2);
  });
  const Point p{{0.2, 0.4}};
  EXPECT_EQ(kind_of([&] { mtw_tensor(quartic, p, p); }), ErrorKind::kNonDegeneracy);
}

TEST(MtwTensor, OrderBelowFourRejected) {
  const SphereCost sphere;
  EXPECT_EQ(kind_of([&] {
              mtw_tensor(sphere, Point{{0.0, 0.0, 1.0}}, Point{{1.0, 0.0, 0.0}});
            }),
            ErrorKind::kCapability);
}

TEST(MtwForm, ScaleInvariantInDirections) {
  auto c = make_cost("sqrtplus");
  const auto t = mtw_tensor(*c, Point{{0.1, 0.2, 0.3}}, Point{{1.0, -0.5, 0.7}});
  const Vector xi{{1.0, 2.0, -1.0}};
  Vector eta{{0.5, 0.0, 0.5}};
  EXPECT_NEAR(mtw_form(t, 2.0 * xi, eta), mtw_form(t, xi, eta), 1e-10);
  EXPECT_NEAR(mtw_form(t, xi, 3.0 * eta), mtw_form(t, xi, eta), 1e-10);
}

TEST(DirectionPairs, OrthonormalAndNested) {
  for (int n : {2, 3, 4}) {
    const auto small = direction_pairs(n, 16, 3);
    const auto large = direction_pairs(n, 64, 3);
    EXPECT_EQ(small.size(), static_cast<std::size_t>(16 + n * (n - 1)));
    for (const auto& d : large) {
      EXPECT_NEAR(d.xi.norm(), 1.0, 1e-12);
      EXPECT_NEAR(d.eta.norm(), 1.0, 1e-12);
      EXPECT_LE(std::abs(d.xi.dot(d.eta)), 1e-10);
    }
    for (int k = 0; k < 16; ++k) EXPECT_EQ(small[k].xi, large[k].xi);
  }
}

TEST(A3Infimum, QuadraticIsZero) {
  std::mt19937_64 rng(2);
  auto c = make_cost("quadratic");
  const auto r = a3_infimum(*c, random_pairs(rng, 2, 5, 0.5, 2.0), 32);
  EXPECT_TRUE(r.defined);
  EXPECT_EQ(r.c0_estimate, 0.0);
}

TEST(A3Infimum, EmptyPairsUndefined) {
  auto c = make_cost("log");
  const auto r = a3_infimum(*c, {}, 32);
  EXPECT_FALSE(r.defined);
  EXPECT_EQ(r.samples_checked, 0u);
  EXPECT_EQ(r.label, "upper bound on inf");
}

TEST(A3Infimum, LogPositiveAndMatchesDenseScan) {
  std::mt19937_64 rng(3);
  auto c = make_cost("log");
  const auto r = a3_infimum(*c, random_pairs(rng, 2, 10, 0.5, 2.0), 64);
  ASSERT_TRUE(r.defined);
  EXPECT_GT(r.c0_estimate, 0.0);
  const auto t = mtw_tensor(*c, r.argmin_x, r.argmin_y);
  double oracle = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 10000; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 10000.0;
    oracle = std::min(oracle, mtw_form(t, Vector{{std::cos(a), std::sin(a)}},
                                       Vector{{-std::sin(a), std::cos(a)}}));
  }
  EXPECT_NEAR(r.c0_estimate, oracle, 0.05 * std::abs(oracle));
}

// In the plane the -log form is constant on orthonormal pairs; sqrt(1 + r^2)
// has a direction-dependent form, so the 5% agreement is informative here.
TEST(A3Infimum, SqrtPlusMatchesDenseScan) {
  std::mt19937_64 rng(4);
  auto c = make_cost("sqrtplus");
  const auto r = a3_infimum(*c, random_pairs(rng, 2, 10, 0.5, 2.0), 64);
  const auto t = mtw_tensor(*c, r.argmin_x, r.argmin_y);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int k = 0; k < 10000; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 10000.0;
    const double v = mtw_form(t, Vector{{std::cos(a), std::sin(a)}},
                              Vector{{-std::sin(a), std::cos(a)}});
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_GT(hi - lo, 1e-3);
  EXPECT_GE(r.c0_estimate, lo - 1e-12);
  EXPECT_NEAR(r.c0_estimate, lo, 0.05 * std::abs(lo));
}

TEST(A3Infimum, ArgminDirectionsOrthonormal) {
  std::mt19937_64 rng(5);
  auto c = make_cost("sqrtplus");
  const auto r = a3_infimum(*c, random_pairs(rng, 3, 4, 0.5, 2.0), 64);
  EXPECT_NEAR(r.argmin_xi.norm(), 1.0, 1e-12);
  EXPECT_NEAR(r.argmin_eta.norm(), 1.0, 1e-12);
  EXPECT_LE(std::abs(r.argmin_xi.dot(r.argmin_eta)), 1e-10);
}

TEST(A3Infimum, BoundsEveryEvaluatedForm) {
  auto c = make_cost("sqrtplus");
  const Point x{{0.0, 0.0, 0.0}}, y{{0.8, 0.3, -0.4}};
  const auto r = a3_infimum(*c, {{x, y}}, 32, 7);
  const auto t = mtw_tensor(*c, x, y);
  for (const auto& d : direction_pairs(3, 32, 7)) {
    EXPECT_LE(r.c0_estimate, mtw_form(t, d.xi, d.eta));
  }
}

TEST(A3Infimum, MonotoneInBasepointsAndDirections) {
  std::mt19937_64 rng(6);
  auto c = make_cost("sqrtplus");
  const auto pairs = random_pairs(rng, 3, 12, 0.3, 2.0);
  const Pairs few(pairs.begin(), pairs.begin() + 4);
  const auto base = a3_infimum(*c, few, 16);
  EXPECT_LE(a3_infimum(*c, pairs, 16).c0_estimate, base.c0_estimate);
  EXPECT_LE(a3_infimum(*c, few, 64).c0_estimate, base.c0_estimate);
}

}  // namespace
}  // namespace ptlab
