// Parallel kernels against their serial references.  Every kernel reduces with
// min/max or writes independent entries, so agreement is exact.

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "ptlab/cost_constants.hpp"
#include "ptlab/costs.hpp"
#include "ptlab/free_boundary.hpp"
#include "ptlab/geometry_checks.hpp"
#include "ptlab/grid.hpp"
#include "ptlab/mtw.hpp"
#include "ptlab/reference.hpp"
#include "ptlab/solver.hpp"

namespace ptlab {
namespace {

std::vector<Point> cloud(std::mt19937_64& rng, int count, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point> out(count, Point(n));
  for (auto& p : out) {
    for (int i = 0; i < n; ++i) p[i] = u(rng);
  }
  return out;
}

class ReferenceTest : public ::testing::TestWithParam<const char*> {};

TEST_P(ReferenceTest, PairwiseCosts) {
  std::mt19937_64 rng(21);
  auto cost = make_cost(GetParam());
  const auto xs = cloud(rng, 70, 3, 0.0, 1.0), ys = cloud(rng, 55, 3, 2.0, 3.0);
  EXPECT_EQ(pairwise_costs(xs, ys, *cost), reference::pairwise_costs(xs, ys, *cost));
}

TEST_P(ReferenceTest, Constants) {
  std::mt19937_64 rng(22);
  auto cost = make_cost(GetParam());
  const DomainSample omega{cloud(rng, 40, 2, 0.0, 1.0), SampleRole::kSource};
  const DomainSample lambda{cloud(rng, 30, 2, 1.5, 2.5), SampleRole::kTarget};
  const auto par = estimate_constants(*cost, omega, lambda);
  const auto ser = reference::estimate_constants(*cost, omega, lambda);
  EXPECT_EQ(par.b0, ser.b0);
  EXPECT_EQ(par.b1, ser.b1);
  EXPECT_EQ(par.c2, ser.c2);
  EXPECT_EQ(par.pairs_sampled, ser.pairs_sampled);
  EXPECT_EQ(par.b1_warning, ser.b1_warning);
}

TEST_P(ReferenceTest, ActiveRegion) {
  std::mt19937_64 rng(23);
  std::shared_ptr<const CostModel> cost = make_cost(GetParam());
  const auto xs = cloud(rng, 6, 2, 0.0, 0.5), ys = cloud(rng, 6, 2, 0.6, 1.0);
  std::vector<GeneratingPair> pairs;
  for (int k = 0; k < 6; ++k) pairs.push_back({xs[k], ys[k], cost->value(xs[k], ys[k])});
  const auto grid =
      EvaluationGrid::covering_box(Point::Zero(2), Point::Ones(2), 96);
  const auto par = active_region(pairs, cost, grid);
  const auto ser = reference::active_region(pairs, *cost, grid);
  EXPECT_EQ(par.active, ser.active);
  EXPECT_EQ(par.witness, ser.witness);
  EXPECT_EQ(par.witness_gap, ser.witness_gap);
  EXPECT_GT(par.active_count(), 0u);
}

TEST_P(ReferenceTest, A3Infimum) {
  std::mt19937_64 rng(24);
  auto cost = make_cost(GetParam());
  const auto xs = cloud(rng, 8, 3, 0.0, 1.0), ys = cloud(rng, 8, 3, 1.5, 2.5);
  std::vector<std::pair<Point, Point>> pairs;
  for (int k = 0; k < 8; ++k) pairs.emplace_back(xs[k], ys[k]);
  const auto par = a3_infimum(*cost, pairs, 24, 5);
  const auto ser = reference::a3_infimum(*cost, pairs, 24, 5);
  EXPECT_EQ(par.c0_estimate, ser.c0_estimate);
  EXPECT_EQ(par.samples_checked, ser.samples_checked);
  EXPECT_EQ(par.argmin_x, ser.argmin_x);
  EXPECT_EQ(par.argmin_xi, ser.argmin_xi);
}

INSTANTIATE_TEST_SUITE_P(BuiltIns, ReferenceTest,
                         ::testing::Values("quadratic", "log", "sqrtplus"));

TEST(Reference, MidpointCoverage) {
  std::mt19937_64 rng(25);
  // A disc passes, an annulus fails; both paths see the same numbers.
  std::vector<Vector> disc, ring;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 400; ++k) {
    const double a = 2.0 * M_PI * u(rng);
    disc.push_back(std::sqrt(u(rng)) * Vector{{std::cos(a), std::sin(a)}});
    ring.push_back((0.9 + 0.1 * u(rng)) * Vector{{std::cos(a), std::sin(a)}});
  }
  for (const auto* image : {&disc, &ring}) {
    const auto rep = check_midpoint_coverage(*image);
    const auto [gap, tol] = reference::midpoint_gap_and_tolerance(*image);
    EXPECT_EQ(rep.worst_margin, tol - gap);
  }
  EXPECT_TRUE(check_midpoint_coverage(disc).pass);
  EXPECT_FALSE(check_midpoint_coverage(ring).pass);
}

}  // namespace
}  // namespace ptlab
