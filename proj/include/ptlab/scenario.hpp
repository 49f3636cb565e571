#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptlab/cost_model.hpp"
#include "ptlab/solver.hpp"

namespace ptlab {

// Source or target measure.  kind is one of
//   points     explicit support and optional weights (uniform otherwise)
//   grid       cell centres of the box [lower, upper] split into count cells
//   ball       `samples` uniform random points in B(center, radius)
//   sphere_cap sunflower sample of {<v, center> >= 1 - height} on S^2
// Generated measures carry uniform weights summing to total_mass.
struct MeasureSpec {
  std::string kind = "points";
  std::vector<Point> points;
  std::vector<double> weights;
  Point lower;
  Point upper;
  std::vector<int> count;
  Point center;
  double radius = 0.0;
  double height = 0.0;
  int samples = 0;
  double total_mass = 1.0;
};

struct GridSpec {
  int resolution = 64;
  int margin_cells = 2;
  std::optional<Point> lower;
  std::optional<Point> upper;
};

struct PredicateToggles {
  bool cone = true;
  bool ball = true;
  bool lipschitz = true;
  bool semiconvexity = true;
  bool c_convexity = true;
  bool mtw = true;
};

struct SphereSpec {
  std::size_t resolution = 1000;
  double rho = 0.1;
  double mass_margin = 1e-9;
};

struct Scenario {
  std::string type = "euclidean";  // or "sphere_example"
  std::string cost = "quadratic";
  std::optional<double> separation_floor;
  int dimension = 2;
  MeasureSpec source;
  MeasureSpec target;
  double mass_fraction = 1.0;
  GridSpec grid;
  PredicateToggles predicates;
  double theta = 0.7853981633974483;
  std::uint64_t seed = 0;
  int envelope_windows = 10;
  SphereSpec sphere;
};

// Parses and validates a JSON scenario.  Unknown keys are rejected; syntax
// errors report line and column (kParse), semantic errors name the field
// (kConfiguration).
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// Canonical JSON of the fully defaulted scenario and its SHA-256.
std::string canonical_json(const Scenario& s);
std::string scenario_digest(const Scenario& s);

std::shared_ptr<const CostModel> build_cost(const Scenario& s);
DiscreteMeasure build_measure(const MeasureSpec& spec, int dimension, std::uint64_t seed);
// Whether p lies in the domain the measure samples.
bool measure_domain_contains(const MeasureSpec& spec, const DiscreteMeasure& mu,
                             const Point& p);

}  // namespace ptlab
