#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "ptlab/cost_model.hpp"
#include "ptlab/grid.hpp"
#include "ptlab/solver.hpp"

namespace ptlab {

// A shipped pair (x̄, ȳ) and its sublevel threshold b = c(x̄, ȳ).
struct GeneratingPair {
  Point source;
  Point target;
  double threshold = 0.0;
};

// Union of the sublevel sets {c(., ȳ) < c(x̄, ȳ)} over the plan's pairs,
// sampled at cell centres.
struct ActiveRegionField {
  EvaluationGrid grid;
  CellMask active;
  std::vector<GeneratingPair> pairs;
  // Per cell: index of the pair minimising c(cell, ȳ) - c(x̄, ȳ), -1 if none.
  std::vector<int> witness;
  std::vector<double> witness_gap;
  // Exact membership at arbitrary points; empty for purely cell-based fields.
  std::function<bool(const Point&)> indicator;

  bool is_active(std::size_t cell) const { return active[cell] != 0; }
  // Uses the exact indicator when present, else the containing cell.
  // Points outside the grid are reported inactive.
  bool active_at(const Point& p) const;
  std::size_t active_count() const;

  // Field with a prescribed mask and no generating pairs.
  static ActiveRegionField from_mask(EvaluationGrid grid, CellMask active,
                                     std::function<bool(const Point&)> indicator = {});
};

// Minimal gap c(p, ȳ) - b over the pairs, with its argmin (ties to the
// lowest index).  Returns {+inf, -1} for no pairs.
std::pair<double, int> sublevel_gap(const std::vector<GeneratingPair>& pairs,
                                    const CostModel& cost, const Point& p);

std::vector<GeneratingPair> generating_pairs(const TransportPlan& plan,
                                             const DiscreteMeasure& f,
                                             const DiscreteMeasure& g,
                                             const CostModel& cost);

// Cells are evaluated in parallel.  The field's indicator keeps the cost alive.
ActiveRegionField active_region(std::vector<GeneratingPair> pairs,
                                std::shared_ptr<const CostModel> cost,
                                const EvaluationGrid& grid);
ActiveRegionField active_region(const TransportPlan& plan, const DiscreteMeasure& f,
                                const DiscreteMeasure& g,
                                std::shared_ptr<const CostModel> cost,
                                const EvaluationGrid& grid);

struct FreeBoundarySample {
  std::size_t cell = 0;
  Point point;
  Point target;
  Vector normal;
  double threshold = 0.0;
};

// -grad_x c(x, y) / |grad_x c(x, y)|.
Vector free_normal(const Point& x, const Point& y, const CostModel& cost);

// Active cells with an inactive face neighbour whose neighbours all lie in
// omega_mask.  Fields without generating pairs get the inward mask normal
// (normalised sum of directions to active neighbours).
std::vector<FreeBoundarySample> extract_boundary(const ActiveRegionField& field,
                                                 const CellMask& omega_mask,
                                                 const CostModel* cost);

// Orthonormal frame whose last row is -normal: local = frame * (p - origin).
Matrix base_frame(const Vector& normal);

struct EnvelopeWindow {
  Point center;
  double half_width = 0.0;
};

// phi sampled on a regular (n-1)-grid over [-half_width, half_width]^(n-1) in
// the base-plane coordinates; the active side lies below the graph.
struct ConeEnvelope {
  Point origin;
  Vector normal;
  Matrix frame;
  double alpha = 0.0;
  double half_width = 0.0;
  double spacing = 0.0;
  int points_per_axis = 0;
  std::vector<double> phi;

  int base_dimension() const { return static_cast<int>(origin.size()) - 1; }
  std::size_t node_count() const { return phi.size(); }
  Vector node(std::size_t k) const;
  // World coordinates of the graph point above node k.
  Point graph_point(std::size_t k) const;
};

// phi(z') = max over samples in the window of y_n - alpha |z' - y'|.
ConeEnvelope cone_envelope(const std::vector<FreeBoundarySample>& samples,
                           const Vector& base_normal, double alpha,
                           const EnvelopeWindow& window, int points_per_axis = 33);

// phi(z') = the height where the active region ends along the base normal,
// located by scanning and bisection of field.active_at.  Nodes without a
// crossing in the window hold NaN.
ConeEnvelope level_set_envelope(const ActiveRegionField& field, const Vector& base_normal,
                                double alpha, const EnvelopeWindow& window,
                                int points_per_axis = 33);

// Envelope with phi(z') = fn(z') on the node grid; origin at zero, base
// normal -e_n.  Used to feed synthetic graphs to the envelope predicates.
ConeEnvelope tabulate_envelope(int dimension, double alpha, double half_width,
                               int points_per_axis,
                               const std::function<double(const Vector&)>& fn);

// Largest finite-difference slope between neighbouring nodes.
double envelope_lipschitz(const ConeEnvelope& envelope);

// Two-sided Hausdorff distance in units of cell_size between the graph and
// the samples inside the window.  The graph side is restricted to the inner
// half of the window, where the samples surround every graph point.
double graph_match(const ConeEnvelope& envelope,
                   const std::vector<FreeBoundarySample>& samples, double cell_size);

// max |nu_1 - nu_2| / |x_1 - x_2|^exponent over sample pairs.
double normal_field_holder(const std::vector<FreeBoundarySample>& samples, double exponent);

}  // namespace ptlab
