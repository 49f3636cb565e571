// Command-line front end: solve, boundary, verify, mtw, sphere-demo, report.
// Exit status: 0 when every predicate behaves as expected, 2 when one does
// not, 1 on any error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ptlab/error.hpp"
#include "ptlab/pipeline.hpp"

namespace {

struct Common {
  std::string scenario;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
  bool timings = false;
};

void add_common(CLI::App* cmd, Common& c, bool scenario_required) {
  auto* opt = cmd->add_option("--scenario", c.scenario, "scenario JSON file");
  if (scenario_required) opt->required();
  cmd->add_option("--out", c.out, "output directory");
  cmd->add_option("--seed", c.seed, "override the scenario seed");
  cmd->add_option("--grid", c.grid, "override the grid resolution");
  cmd->add_flag("--timings", c.timings, "include stage timings in record.json");
}

ptlab::Scenario load(const Common& c) {
  ptlab::Scenario s = ptlab::load_scenario(c.scenario);
  if (c.seed) s.seed = *c.seed;
  if (c.grid) {
    if (*c.grid < 8) ptlab::fail(ptlab::ErrorKind::kConfiguration, "--grid must be at least 8");
    s.grid.resolution = *c.grid;
  }
  return s;
}

void print_summary(const ptlab::RunRecord& r) {
  std::cout << "digest " << r.digest << "\n";
  std::cout << "objective " << r.objective << "  mass " << r.mass << "  duality violation "
            << r.duality_violation << "\n";
  for (const auto& rep : r.reports) {
    const char* status = rep.skipped ? "SKIP" : rep.degenerate ? "DEGENERATE" : rep.pass ? "PASS" : "FAIL";
    std::cout << "  " << rep.name << ": " << status;
    if (!rep.expected_pass) std::cout << " (expected fail)";
    if (!rep.note.empty()) std::cout << "  [" << rep.note << "]";
    std::cout << "\n";
  }
}

int finish(const ptlab::RunRecord& r) {
  print_summary(r);
  return r.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal partial transport free-boundary laboratory"};
  app.require_subcommand(1);

  Common solve_opt, boundary_opt, verify_opt, mtw_opt, sphere_opt, report_opt;
  auto* solve = app.add_subcommand("solve", "solve the partial transport problem");
  add_common(solve, solve_opt, true);
  auto* boundary = app.add_subcommand("boundary", "active region, free boundary and envelopes");
  add_common(boundary, boundary_opt, true);
  auto* verify = app.add_subcommand("verify", "run every enabled geometric predicate");
  add_common(verify, verify_opt, true);
  auto* mtw = app.add_subcommand("mtw", "sampled A3 constant on solved pairs");
  add_common(mtw, mtw_opt, true);
  auto* sphere = app.add_subcommand("sphere-demo", "spherical cap example");
  add_common(sphere, sphere_opt, false);
  std::size_t resolution = 1000;
  double rho = 0.1;
  double mass_margin = 1e-9;
  sphere->add_option("--resolution", resolution, "number of lattice points on the sphere");
  sphere->add_option("--rho", rho, "relative target surplus on the cap");
  sphere->add_option("--mass-margin", mass_margin, "allowed active mass in the north cap");
  auto* report = app.add_subcommand("report", "run everything and write every output");
  add_common(report, report_opt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    namespace fs = std::filesystem;
    if (solve->parsed()) {
      const auto r = ptlab::run_pipeline(load(solve_opt), ptlab::Stage::kSolve);
      ptlab::write_plan_csv(r, solve_opt.out);
      ptlab::write_record_json(r, solve_opt.out, {solve_opt.timings});
      return finish(r);
    }
    if (boundary->parsed()) {
      const auto r = ptlab::run_pipeline(load(boundary_opt), ptlab::Stage::kBoundary);
      if (r.field) {
        ptlab::write_active_csv(r, boundary_opt.out);
        ptlab::write_boundary_csv(r, boundary_opt.out);
        ptlab::write_envelope_csv(r, boundary_opt.out);
      }
      if (r.sphere) ptlab::write_sphere_boundary_csv(r, boundary_opt.out);
      ptlab::write_record_json(r, boundary_opt.out, {boundary_opt.timings});
      return finish(r);
    }
    if (verify->parsed()) {
      const auto r = ptlab::run_pipeline(load(verify_opt), ptlab::Stage::kVerify);
      ptlab::write_reports_json(r, verify_opt.out);
      ptlab::write_summary_csv(r, verify_opt.out);
      ptlab::write_record_json(r, verify_opt.out, {verify_opt.timings});
      return finish(r);
    }
    if (mtw->parsed()) {
      const auto r = ptlab::run_pipeline(load(mtw_opt), ptlab::Stage::kMtw);
      ptlab::write_mtw_json(r, mtw_opt.out);
      return finish(r);
    }
    if (sphere->parsed()) {
      ptlab::Scenario s;
      if (!sphere_opt.scenario.empty()) {
        s = load(sphere_opt);
        if (s.type != "sphere_example") {
          ptlab::fail(ptlab::ErrorKind::kConfiguration, "sphere-demo needs a sphere_example scenario");
        }
      } else {
        s.type = "sphere_example";
        s.cost = "sphere";
        if (sphere_opt.seed) s.seed = *sphere_opt.seed;
      }
      if (sphere->count("--resolution")) s.sphere.resolution = resolution;
      if (sphere->count("--rho")) s.sphere.rho = rho;
      if (sphere->count("--mass-margin")) s.sphere.mass_margin = mass_margin;
      if (s.sphere.resolution < 500) {
        ptlab::fail(ptlab::ErrorKind::kConfiguration, "--resolution must be at least 500");
      }
      const auto r = ptlab::run_pipeline(s, ptlab::Stage::kAll);
      ptlab::write_sphere_json(r, sphere_opt.out);
      ptlab::write_sphere_boundary_csv(r, sphere_opt.out);
      return finish(r);
    }
    if (report->parsed()) {
      const auto r = ptlab::run_pipeline(load(report_opt), ptlab::Stage::kAll);
      const fs::path out = report_opt.out;
      ptlab::write_plan_csv(r, out);
      if (r.field) {
        ptlab::write_active_csv(r, out);
        ptlab::write_boundary_csv(r, out);
        ptlab::write_envelope_csv(r, out);
      }
      if (r.sphere) {
        ptlab::write_sphere_json(r, out);
        ptlab::write_sphere_boundary_csv(r, out);
      }
      ptlab::write_reports_json(r, out);
      ptlab::write_summary_csv(r, out);
      ptlab::write_mtw_json(r, out);
      ptlab::write_record_json(r, out, {report_opt.timings});
      return finish(r);
    }
  } catch (const ptlab::Error& e) {
    std::cerr << "error [" << ptlab::to_string(e.kind()) << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
