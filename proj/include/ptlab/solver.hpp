#pragma once

#include <cstddef>
#include <vector>

#include "ptlab/cost_model.hpp"

namespace ptlab {

// Weighted point cloud; weights strictly positive.
struct DiscreteMeasure {
  std::vector<Point> support;
  std::vector<double> weights;

  static DiscreteMeasure make(std::vector<Point> support, std::vector<double> weights);

  std::size_t size() const { return support.size(); }
  double total_mass() const;
  int dimension() const {
    return support.empty() ? 0 : static_cast<int>(support.front().size());
  }
  void validate() const;
};

struct PlanEntry {
  std::size_t source = 0;
  std::size_t target = 0;
  double mass = 0.0;
};

struct TransportPlan {
  std::vector<PlanEntry> entries;  // sorted by (source, target)
  double objective = 0.0;
  double mass = 0.0;
  std::vector<double> left_marginal;
  std::vector<double> right_marginal;
  std::vector<double> dual_u;
  std::vector<double> dual_v;
};

struct ActivePair {
  std::size_t source = 0;
  std::size_t target = 0;
};

// c(x_i, y_j) for every source/target pair.
Matrix pairwise_costs(const std::vector<Point>& sources,
                      const std::vector<Point>& targets, const CostModel& cost);

// Exact optimal partial transport of mass m.  The problem is balanced by a
// dummy source carrying |g| - m and a dummy target carrying |f| - m, joined to
// the real nodes by zero-cost arcs (the dummy-dummy arc is absent), and solved
// by successive shortest paths with node potentials.  Dual potentials on the
// real nodes satisfy c_ij - u_i - v_j >= 0 with equality on shipped arcs.
TransportPlan solve_partial(const DiscreteMeasure& f, const DiscreteMeasure& g,
                            double m, const CostModel& cost);
TransportPlan solve_partial(const std::vector<double>& f, const std::vector<double>& g,
                            double m, const Matrix& costs);

// Test oracle: the same problem as a dense linear program solved by the
// simplex method.  Refuses supports larger than 6 x 6.
TransportPlan brute_force_partial(const DiscreteMeasure& f, const DiscreteMeasure& g,
                                  double m, const CostModel& cost);
TransportPlan brute_force_partial(const std::vector<double>& f,
                                  const std::vector<double>& g, double m,
                                  const Matrix& costs);

// One target per active source: the largest receiving mass, ties to the
// lowest target index.
std::vector<ActivePair> extract_map(const TransportPlan& plan);

// Largest complementary-slackness violation of the plan's dual potentials.
double check_duality(const TransportPlan& plan, const Matrix& costs);
double check_duality(const TransportPlan& plan, const DiscreteMeasure& f,
                     const DiscreteMeasure& g, const CostModel& cost);

// Fills dual_u/dual_v for an arbitrary feasible plan: nodes with unused mass
// are pinned to 0 (slack on their zero-cost dummy arc), potentials then
// propagate along shipped arcs, and components without an anchor are pinned
// at their lowest source index.
void reconstruct_potentials(TransportPlan& plan, const std::vector<double>& f,
                            const std::vector<double>& g, const Matrix& costs);

// Objective of (f, g, c) against (g, f, c~) with c~(y, x) = c(x, y).
bool exchange_symmetry_check(const DiscreteMeasure& f, const DiscreteMeasure& g,
                             double m, const CostModel& cost, double tolerance = 1e-9);

}  // namespace ptlab
