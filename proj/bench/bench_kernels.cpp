// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <memory>

#include "ptlab/costs.hpp"
#include "ptlab/free_boundary.hpp"
#include "ptlab/geometry_checks.hpp"
#include "ptlab/reference.hpp"
#include "ptlab/solver.hpp"

namespace {

std::vector<ptlab::Point> lattice(int side, double x0, double y0, double width) {
  std::vector<ptlab::Point> pts;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      ptlab::Point p(2);
      p << x0 + width * (i + 0.5) / side, y0 + width * (j + 0.5) / side;
      pts.push_back(p);
    }
  }
  return pts;
}

std::vector<ptlab::GeneratingPair> pairs_for(const ptlab::CostModel& cost) {
  std::vector<ptlab::GeneratingPair> pairs;
  const auto xs = lattice(8, 0.0, 0.0, 1.0);
  const auto ys = lattice(8, 1.5, 0.0, 0.5);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    pairs.push_back({xs[k], ys[k], cost.value(xs[k], ys[k])});
  }
  return pairs;
}

void BM_PairwiseParallel(benchmark::State& state) {
  const ptlab::LogCost cost;
  const auto xs = lattice(static_cast<int>(state.range(0)), 0.0, 0.0, 1.0);
  const auto ys = lattice(static_cast<int>(state.range(0)), 2.0, 0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(ptlab::pairwise_costs(xs, ys, cost));
}
BENCHMARK(BM_PairwiseParallel)->Arg(16)->Arg(32);

void BM_PairwiseSerial(benchmark::State& state) {
  const ptlab::LogCost cost;
  const auto xs = lattice(static_cast<int>(state.range(0)), 0.0, 0.0, 1.0);
  const auto ys = lattice(static_cast<int>(state.range(0)), 2.0, 0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(ptlab::reference::pairwise_costs(xs, ys, cost));
}
BENCHMARK(BM_PairwiseSerial)->Arg(16)->Arg(32);

void BM_ActiveRegionParallel(benchmark::State& state) {
  auto cost = std::make_shared<ptlab::QuadraticCost>();
  const auto pairs = pairs_for(*cost);
  const auto grid = ptlab::EvaluationGrid::covering(lattice(2, 0.0, 0.0, 1.0),
                                                    static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ptlab::active_region(pairs, cost, grid));
}
BENCHMARK(BM_ActiveRegionParallel)->Arg(64)->Arg(128);

void BM_ActiveRegionSerial(benchmark::State& state) {
  const ptlab::QuadraticCost cost;
  const auto pairs = pairs_for(cost);
  const auto grid = ptlab::EvaluationGrid::covering(lattice(2, 0.0, 0.0, 1.0),
                                                    static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ptlab::reference::active_region(pairs, cost, grid));
}
BENCHMARK(BM_ActiveRegionSerial)->Arg(64)->Arg(128);

void BM_ConstantsParallel(benchmark::State& state) {
  const ptlab::LogCost cost;
  const ptlab::DomainSample omega{lattice(16, 0.0, 0.0, 1.0)};
  const ptlab::DomainSample lambda{lattice(16, 2.0, 0.0, 1.0)};
  for (auto _ : state) benchmark::DoNotOptimize(ptlab::estimate_constants(cost, omega, lambda));
}
BENCHMARK(BM_ConstantsParallel);

void BM_ConstantsSerial(benchmark::State& state) {
  const ptlab::LogCost cost;
  const ptlab::DomainSample omega{lattice(16, 0.0, 0.0, 1.0)};
  const ptlab::DomainSample lambda{lattice(16, 2.0, 0.0, 1.0)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptlab::reference::estimate_constants(cost, omega, lambda));
  }
}
BENCHMARK(BM_ConstantsSerial);

void BM_MidpointCoverageParallel(benchmark::State& state) {
  std::vector<ptlab::Vector> image;
  for (const auto& p : lattice(static_cast<int>(state.range(0)), 0.0, 0.0, 1.0)) image.push_back(p);
  for (auto _ : state) benchmark::DoNotOptimize(ptlab::check_midpoint_coverage(image));
}
BENCHMARK(BM_MidpointCoverageParallel)->Arg(10)->Arg(16);

void BM_MidpointCoverageSerial(benchmark::State& state) {
  std::vector<ptlab::Vector> image;
  for (const auto& p : lattice(static_cast<int>(state.range(0)), 0.0, 0.0, 1.0)) image.push_back(p);
  for (auto _ : state) benchmark::DoNotOptimize(ptlab::reference::midpoint_gap_and_tolerance(image));
}
BENCHMARK(BM_MidpointCoverageSerial)->Arg(10)->Arg(16);

void BM_A3Parallel(benchmark::State& state) {
  const ptlab::LogCost cost;
  std::vector<std::pair<ptlab::Point, ptlab::Point>> pairs;
  const auto xs = lattice(3, 0.0, 0.0, 1.0);
  for (const auto& x : xs) pairs.emplace_back(x, x + ptlab::Vector::Constant(2, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(ptlab::a3_infimum(cost, pairs, 64));
}
BENCHMARK(BM_A3Parallel);

void BM_A3Serial(benchmark::State& state) {
  const ptlab::LogCost cost;
  std::vector<std::pair<ptlab::Point, ptlab::Point>> pairs;
  const auto xs = lattice(3, 0.0, 0.0, 1.0);
  for (const auto& x : xs) pairs.emplace_back(x, x + ptlab::Vector::Constant(2, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(ptlab::reference::a3_infimum(cost, pairs, 64));
}
BENCHMARK(BM_A3Serial);

}  // namespace

BENCHMARK_MAIN();
