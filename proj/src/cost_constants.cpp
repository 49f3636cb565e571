#include "ptlab/cost_constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "ptlab/error.hpp"

namespace ptlab {

namespace {

void check_samples(const CostModel& cost, const DomainSample& omega,
                   const DomainSample& lambda) {
  if (omega.points.empty() || lambda.points.empty()) {
    fail(ErrorKind::kRejectedInput, "domain samples must be non-empty");
  }
  const int n = omega.dimension();
  for (const auto* sample : {&omega, &lambda}) {
    for (const auto& p : sample->points) {
      if (p.size() != n) {
        fail(ErrorKind::kRejectedInput, "sample points have mismatched dimensions");
      }
    }
  }
  if (cost.dimension() != 0 && cost.dimension() != n) {
    fail(ErrorKind::kRejectedInput, "sample dimension does not match cost '" +
                                        cost.id() + "'");
  }
}

double operator_norm(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

double estimate_b0(const CostModel& cost, const DomainSample& omega,
                   const DomainSample& lambda) {
  check_samples(cost, omega, lambda);
  const auto ns = static_cast<long>(omega.points.size());
  const auto nt = static_cast<long>(lambda.points.size());
  double best = std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(min : best) schedule(static)
  for (long k = 0; k < ns * nt; ++k) {
    best = std::min(best, cost.value(omega.points[k / nt], lambda.points[k % nt]));
  }
  return best;
}

GradientBound estimate_b1(const CostModel& cost, const DomainSample& omega,
                          const DomainSample& lambda, double tolerance) {
  check_samples(cost, omega, lambda);
  cost.require_order(1, "estimate_b1");
  const auto ns = static_cast<long>(omega.points.size());
  const auto nt = static_cast<long>(lambda.points.size());
  double best = std::numeric_limits<double>::infinity();
#pragma omp parallel for reduction(min : best) schedule(static)
  for (long k = 0; k < ns * nt; ++k) {
    best = std::min(best,
                    cost.grad_x(omega.points[k / nt], lambda.points[k % nt]).norm());
  }
  return {best, best <= tolerance};
}

double estimate_c2(const CostModel& cost, const DomainSample& omega,
                   const DomainSample& lambda) {
  check_samples(cost, omega, lambda);
  cost.require_order(2, "estimate_c2");
  const auto ns = static_cast<long>(omega.points.size());
  const auto nt = static_cast<long>(lambda.points.size());
  double worst = 0.0;
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (long k = 0; k < ns * nt; ++k) {
    worst = std::max(worst, operator_norm(cost.hess_xx(omega.points[k / nt],
                                                       lambda.points[k % nt])));
  }
  return worst;
}

CostConstants estimate_constants(const CostModel& cost, const DomainSample& omega,
                                 const DomainSample& lambda, double b1_tolerance) {
  CostConstants k;
  k.b0 = estimate_b0(cost, omega, lambda);
  const GradientBound b1 = estimate_b1(cost, omega, lambda, b1_tolerance);
  k.b1 = b1.value;
  k.b1_warning = b1.warning;
  if (cost.smoothness_order() >= 2) k.c2 = estimate_c2(cost, omega, lambda);
  k.pairs_sampled = omega.points.size() * lambda.points.size();
  return k;
}

bool check_twist(const CostModel& cost, const Point& x, const DomainSample& lambda,
                 double tolerance) {
  cost.require_order(1, "check_twist");
  std::vector<Vector> grads;
  grads.reserve(lambda.points.size());
  for (const auto& y : lambda.points) grads.push_back(cost.grad_x(x, y));
  for (std::size_t a = 0; a < grads.size(); ++a) {
    for (std::size_t b = a + 1; b < grads.size(); ++b) {
      if ((grads[a] - grads[b]).norm() <= tolerance) return false;
    }
  }
  return true;
}

double check_nondegeneracy(const CostModel& cost, const Point& x, const Point& y) {
  cost.require_order(2, "check_nondegeneracy");
  return cost.hess_xy(x, y).determinant();
}

}  // namespace ptlab
