#pragma once

// Straightforward single-threaded versions of the parallel kernels.  Tests
// compare them against the OpenMP paths and the benchmark times both.

#include <memory>
#include <utility>
#include <vector>

#include "ptlab/cost_constants.hpp"
#include "ptlab/free_boundary.hpp"
#include "ptlab/mtw.hpp"

namespace ptlab::reference {

Matrix pairwise_costs(const std::vector<Point>& sources, const std::vector<Point>& targets,
                      const CostModel& cost);

CostConstants estimate_constants(const CostModel& cost, const DomainSample& omega,
                                 const DomainSample& lambda, double b1_tolerance = 1e-9);

ActiveRegionField active_region(const std::vector<GeneratingPair>& pairs,
                                const CostModel& cost, const EvaluationGrid& grid);

A3Report a3_infimum(const CostModel& cost, const std::vector<std::pair<Point, Point>>& pairs,
                    int directions_per_pair, std::uint64_t seed = 0);

// Largest midpoint-to-image gap and twice the largest nearest-neighbour
// spacing, the two numbers behind check_midpoint_coverage.
std::pair<double, double> midpoint_gap_and_tolerance(const std::vector<Vector>& image);

}  // namespace ptlab::reference
