#include "ptlab/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "ptlab/error.hpp"

namespace ptlab::reference {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Matrix pairwise_costs(const std::vector<Point>& sources, const std::vector<Point>& targets,
                      const CostModel& cost) {
  Matrix c(sources.size(), targets.size());
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (std::size_t j = 0; j < targets.size(); ++j) c(i, j) = cost.value(sources[i], targets[j]);
  }
  return c;
}

CostConstants estimate_constants(const CostModel& cost, const DomainSample& omega,
                                 const DomainSample& lambda, double b1_tolerance) {
  if (omega.points.empty() || lambda.points.empty()) {
    fail(ErrorKind::kRejectedInput, "domain samples must be non-empty");
  }
  CostConstants k;
  k.b0 = kInf;
  k.b1 = kInf;
  const bool second = cost.smoothness_order() >= 2;
  for (const auto& x : omega.points) {
    for (const auto& y : lambda.points) {
      k.b0 = std::min(k.b0, cost.value(x, y));
      k.b1 = std::min(k.b1, cost.grad_x(x, y).norm());
      if (second) {
        Eigen::SelfAdjointEigenSolver<Matrix> eig(cost.hess_xx(x, y), Eigen::EigenvaluesOnly);
        k.c2 = std::max(k.c2, eig.eigenvalues().cwiseAbs().maxCoeff());
      }
    }
  }
  k.b1_warning = k.b1 <= b1_tolerance;
  k.pairs_sampled = omega.points.size() * lambda.points.size();
  return k;
}

ActiveRegionField active_region(const std::vector<GeneratingPair>& pairs,
                                const CostModel& cost, const EvaluationGrid& grid) {
  ActiveRegionField field;
  field.grid = grid;
  field.pairs = pairs;
  field.active.assign(grid.cell_count(), 0);
  field.witness.assign(grid.cell_count(), -1);
  field.witness_gap.assign(grid.cell_count(), kInf);
  for (std::size_t cell = 0; cell < grid.cell_count(); ++cell) {
    const Point p = grid.center(cell);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const double gap = cost.value(p, pairs[k].target) - pairs[k].threshold;
      if (gap < field.witness_gap[cell]) {
        field.witness_gap[cell] = gap;
        field.witness[cell] = static_cast<int>(k);
      }
    }
    field.active[cell] = field.witness_gap[cell] < 0.0;
  }
  return field;
}

A3Report a3_infimum(const CostModel& cost, const std::vector<std::pair<Point, Point>>& pairs,
                    int directions_per_pair, std::uint64_t seed) {
  A3Report report;
  if (pairs.empty()) {
    report.c0_estimate = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  const int n = static_cast<int>(pairs.front().first.size());
  if (n < 2) fail(ErrorKind::kDegenerate, "A3 form needs dimension >= 2");
  const auto dirs = direction_pairs(n, directions_per_pair, seed);
  report.c0_estimate = kInf;
  for (const auto& [x, y] : pairs) {
    const MtwTensor t = mtw_tensor(cost, x, y);
    for (const auto& d : dirs) {
      const double v = mtw_form(t, d.xi, d.eta);
      if (v < report.c0_estimate) {
        report.c0_estimate = v;
        report.argmin_x = x;
        report.argmin_y = y;
        report.argmin_xi = d.xi;
        report.argmin_eta = d.eta;
      }
    }
  }
  report.defined = true;
  report.samples_checked = pairs.size() * dirs.size();
  return report;
}

std::pair<double, double> midpoint_gap_and_tolerance(const std::vector<Vector>& image) {
  double spacing = 0.0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    double nearest = kInf;
    for (std::size_t j = 0; j < image.size(); ++j) {
      if (i != j) nearest = std::min(nearest, (image[i] - image[j]).norm());
    }
    spacing = std::max(spacing, nearest);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    for (std::size_t j = i + 1; j < image.size(); ++j) {
      const Vector mid = 0.5 * (image[i] + image[j]);
      double gap = kInf;
      for (const auto& v : image) gap = std::min(gap, (mid - v).norm());
      worst = std::max(worst, gap);
    }
  }
  return {worst, 2.0 * spacing};
}

}  // namespace ptlab::reference
