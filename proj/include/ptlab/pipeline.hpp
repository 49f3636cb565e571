#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptlab/cost_constants.hpp"
#include "ptlab/free_boundary.hpp"
#include "ptlab/geometry_checks.hpp"
#include "ptlab/mtw.hpp"
#include "ptlab/scenario.hpp"
#include "ptlab/sphere.hpp"

namespace ptlab {

enum class Stage { kSolve, kBoundary, kVerify, kMtw, kAll };

struct RunRecord {
  std::string digest;
  std::uint64_t seed = 0;
  std::string type;
  std::string cost;
  double objective = 0.0;
  double mass = 0.0;
  double duality_violation = 0.0;
  std::optional<CostConstants> constants;
  std::optional<ConeProfile> profile;
  std::vector<PredicateReport> reports;
  std::optional<A3Report> a3;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, double>> timings;  // seconds

  DiscreteMeasure source;
  DiscreteMeasure target;
  TransportPlan plan;
  std::optional<ActiveRegionField> field;
  std::vector<FreeBoundarySample> samples;
  std::vector<ConeEnvelope> envelopes;
  std::optional<CapExampleReport> sphere;

  // No report contradicts its expectation.
  bool all_pass() const;
};

// solve -> active region -> boundary -> predicates, stopping after `stage`.
// Module errors are rethrown with the stage name prefixed.
RunRecord run_pipeline(const Scenario& s, Stage stage = Stage::kAll);

struct OutputOptions {
  bool timings = false;
};

// Each writer returns the path it wrote.  Every file carries the digest.
std::filesystem::path write_record_json(const RunRecord& r, const std::filesystem::path& dir,
                                        const OutputOptions& opt = {});
std::filesystem::path write_plan_csv(const RunRecord& r, const std::filesystem::path& dir);
std::filesystem::path write_active_csv(const RunRecord& r, const std::filesystem::path& dir);
std::filesystem::path write_boundary_csv(const RunRecord& r, const std::filesystem::path& dir);
std::filesystem::path write_envelope_csv(const RunRecord& r, const std::filesystem::path& dir);
std::filesystem::path write_reports_json(const RunRecord& r, const std::filesystem::path& dir);
std::filesystem::path write_summary_csv(const RunRecord& r, const std::filesystem::path& dir);
std::filesystem::path write_mtw_json(const RunRecord& r, const std::filesystem::path& dir);
std::filesystem::path write_sphere_json(const RunRecord& r, const std::filesystem::path& dir);
std::filesystem::path write_sphere_boundary_csv(const RunRecord& r,
                                                const std::filesystem::path& dir);

}  // namespace ptlab
