#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptlab/cost_constants.hpp"
#include "ptlab/free_boundary.hpp"

namespace ptlab {

// Sampled certificate for one geometric predicate.  pass means no violation
// was found at this resolution; it is not a proof.
struct PredicateReport {
  std::string name;
  bool pass = true;
  double worst_margin = 0.0;
  std::vector<Point> witness;
  std::size_t samples_checked = 0;
  bool degenerate = false;
  bool skipped = false;
  // Some reports (counterexamples) are expected to fail.
  bool expected_pass = true;
  std::string note;

  bool as_expected() const { return skipped || pass == expected_pass; }
};

// Cone opening matched to half-angle theta and the radius up to which the
// sublevel sets of c(., y) contain that cone.
struct ConeProfile {
  double delta = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
  bool alpha_capped = false;
};

inline constexpr double kMaxConeAlpha = 1e12;

// alpha = tan(pi/2 - theta), delta = b1 cos(theta) / (2 c2).
ConeProfile cone_profile(const CostModel& cost, const CostConstants& constants, double theta);

// Ray fan of `rays` directions at angle < theta from the sample normal, at
// radii delta k/8 for k = 1..8.  Points outside the grid are skipped.
PredicateReport check_cone_condition(const ActiveRegionField& field,
                                     const std::vector<FreeBoundarySample>& samples,
                                     const ConeProfile& profile, int rays = 64,
                                     std::uint64_t seed = 0);

struct BallOptions {
  double factor = 0.9;
  // Replaces factor * b1 / c2 when set.
  std::optional<double> radius;
};

// Grid cells inside B_rho(x + rho nu) must be active, rho = factor b1 / c2.
PredicateReport check_ball_condition(const ActiveRegionField& field,
                                     const std::vector<FreeBoundarySample>& samples,
                                     const CostConstants& constants,
                                     const BallOptions& options = {});

// Largest distance from an active cell centre to the inactive set, with
// cells beyond the grid counted inactive.
double region_inradius(const ActiveRegionField& field);

// Second differences of phi bounded below by -(h^2 / r)(1 + tolerance).
PredicateReport check_semiconvexity(const ConeEnvelope& envelope, double r,
                                    double tolerance = 0.1);

// Midpoint coverage of the image {grad_x c(x, y) : y in lambda}; tolerance is
// twice the largest nearest-neighbour spacing of the image.
PredicateReport check_c_convexity(const CostModel& cost, const Point& x,
                                  const DomainSample& lambda);
// Same test on an explicit image point cloud.
PredicateReport check_midpoint_coverage(const std::vector<Vector>& image);

double curvature_threshold(double a1, double a2, int n);

// (2p - n - 1) / (2p(2n - 1) - n + 1); pass +infinity for the limit.
double holder_exponent(double p, int n);

}  // namespace ptlab
