#include "ptlab/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>

#include "json.hpp"
#include "ptlab/distance_transform.hpp"
#include "ptlab/error.hpp"

namespace ptlab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class Stopwatch {
 public:
  explicit Stopwatch(RunRecord& r, std::string name)
      : r_(r), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
    r_.timings.emplace_back(name_, d.count());
  }

 private:
  RunRecord& r_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

template <typename F>
auto attributed(const char* module, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(module) + ": " + e.what());
  }
}

PredicateReport skipped(std::string name, std::string reason) {
  PredicateReport r;
  r.name = std::move(name);
  r.skipped = true;
  r.note = std::move(reason);
  return r;
}

std::vector<std::size_t> spread(std::size_t n, int k) {
  std::vector<std::size_t> out;
  const std::size_t count = std::min<std::size_t>(n, static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < count; ++i) out.push_back(i * n / count);
  return out;
}

// Samples far enough from the fixed boundary that the inner half of their
// envelope window (half-width 8h) stays inside omega; all samples when none
// qualifies.
std::vector<std::size_t> window_centres(const std::vector<FreeBoundarySample>& samples,
                                        const EvaluationGrid& grid, const CellMask& omega,
                                        int count) {
  const auto depth = signed_distance(grid, omega, true);
  const double need =
      (4.0 * std::sqrt(static_cast<double>(grid.dimension())) + 1.0) * grid.cell_size();
  std::vector<std::size_t> deep;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (depth[samples[i].cell] >= need) deep.push_back(i);
  }
  if (deep.empty()) {
    deep.resize(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) deep[i] = i;
  }
  std::vector<std::size_t> out;
  for (std::size_t k : spread(deep.size(), count)) out.push_back(deep[k]);
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string header(const RunRecord& r) {
  return "# digest=" + r.digest + " seed=" + std::to_string(r.seed) + "\n";
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kConfiguration, "cannot write " + path.string());
  out << text;
}

json point_json(const Vector& p) {
  json a = json::array();
  for (long i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

json report_json(const PredicateReport& r) {
  json w = json::array();
  for (const auto& p : r.witness) w.push_back(point_json(p));
  return {{"name", r.name},
          {"pass", r.pass},
          {"worst_margin", r.worst_margin},
          {"witness", w},
          {"samples_checked", r.samples_checked},
          {"degenerate", r.degenerate},
          {"skipped", r.skipped},
          {"expected_pass", r.expected_pass},
          {"as_expected", r.as_expected()},
          {"note", r.note},
          {"semantics", "no violation found at this resolution"}};
}

json a3_json(const A3Report& a) {
  json j = {{"c0_estimate", a.defined ? json(a.c0_estimate) : json(nullptr)},
            {"defined", a.defined},
            {"samples_checked", a.samples_checked},
            {"label", a.label}};
  if (a.defined) {
    j["argmin"] = {{"x", point_json(a.argmin_x)},
                   {"y", point_json(a.argmin_y)},
                   {"xi", point_json(a.argmin_xi)},
                   {"eta", point_json(a.argmin_eta)}};
  }
  return j;
}

void run_sphere(const Scenario& s, RunRecord& r, Stage stage) {
  CapExampleOptions opt;
  opt.resolution = s.sphere.resolution;
  opt.rho = s.sphere.rho;
  opt.mass_margin = s.sphere.mass_margin;
  {
    Stopwatch sw(r, "sphere_example");
    r.sphere = attributed("sphere_riemannian", [&] { return run_cap_example(opt); });
  }
  const auto& ex = *r.sphere;
  r.plan = ex.plan;
  r.objective = ex.objective;
  r.mass = ex.plan.mass;
  r.source.support = ex.sources;
  r.target.support = ex.targets;
  const SphereCost cost;
  r.duality_violation = check_duality(ex.plan, pairwise_costs(ex.sources, ex.targets, cost));
  if (stage == Stage::kSolve || stage == Stage::kMtw) return;

  PredicateReport north;
  north.name = "sphere_north_cap_inactive";
  north.worst_margin = opt.mass_margin - ex.north_active_mass;
  north.pass = ex.north_inactive;
  north.samples_checked = ex.source_count;
  north.note = "active mass in the north cap of height 1/16";
  r.reports.push_back(north);

  PredicateReport arith;
  arith.name = "sphere_cap_arithmetic";
  arith.worst_margin = std::min(8.0 / 7.0 - 2.0 * ex.theta,
                                1e-12 - std::abs(ex.tan_theta - std::sqrt(15.0) / 7.0));
  arith.pass = ex.chain_holds && arith.worst_margin >= 0.0;
  arith.samples_checked = 1;
  arith.note = "tan(theta) = sqrt(15)/7 and 2 theta <= 8/7 < 15/8";
  r.reports.push_back(arith);

  PredicateReport arcs;
  arcs.name = "sphere_no_long_arcs";
  arcs.worst_margin = 15.0 / 8.0 - ex.max_transport_distance;
  arcs.pass = ex.long_arcs == 0;
  arcs.samples_checked = ex.plan.entries.size();
  arcs.note = "shipped pairs stay below distance 15/8";
  r.reports.push_back(arcs);

  {
    Stopwatch sw(r, "annulus_image");
    PredicateReport annulus = attributed("sphere_riemannian", [] { return annulus_image_demo(); });
    annulus.name = "c_convexity_annulus";
    annulus.expected_pass = false;
    r.reports.push_back(annulus);
  }
}

void run_predicates(const Scenario& s, RunRecord& r, const CostModel& cost,
                    const CellMask& omega) {
  const auto& field = *r.field;
  const double h = field.grid.cell_size();
  const int n = field.grid.dimension();
  const auto& k = *r.constants;
  const bool order2 = cost.smoothness_order() >= 2;
  const bool have_samples = !r.samples.empty();

  std::string profile_issue;
  if (!order2) {
    profile_issue = "cone profile needs an order-2 cost";
  } else if (k.b1_warning || !(k.b1 > 0.0)) {
    profile_issue = "b1 at or below tolerance; the cone profile is undefined";
  } else if (!(k.c2 > 0.0)) {
    profile_issue = "c2 vanishes";
  } else {
    r.profile = attributed("geometry_checks", [&] { return cone_profile(cost, k, s.theta); });
  }

  if (!s.predicates.cone) {
    r.reports.push_back(skipped("cone_condition", "disabled"));
  } else if (!r.profile) {
    r.reports.push_back(skipped("cone_condition", profile_issue));
  } else if (!have_samples) {
    r.reports.push_back(skipped("cone_condition", "no free-boundary samples"));
  } else {
    Stopwatch sw(r, "cone_condition");
    r.reports.push_back(attributed("geometry_checks", [&] {
      return check_cone_condition(field, r.samples, *r.profile, 64, s.seed);
    }));
  }

  if (!s.predicates.ball) {
    r.reports.push_back(skipped("ball_condition", "disabled"));
  } else if (!r.profile) {
    r.reports.push_back(skipped("ball_condition", profile_issue));
  } else if (!have_samples) {
    r.reports.push_back(skipped("ball_condition", "no free-boundary samples"));
  } else {
    Stopwatch sw(r, "ball_condition");
    r.reports.push_back(
        attributed("geometry_checks", [&] { return check_ball_condition(field, r.samples, k); }));
  }

  const auto windows = window_centres(r.samples, field.grid, omega, s.envelope_windows);
  const double alpha = r.profile ? r.profile->alpha : 1.0 / std::tan(s.theta);
  const bool envelope_ok = n >= 2 && have_samples;

  if (!s.predicates.lipschitz) {
    r.reports.push_back(skipped("lipschitz_envelope", "disabled"));
  } else if (!envelope_ok) {
    r.reports.push_back(skipped("lipschitz_envelope", n < 2 ? "needs dimension >= 2"
                                                            : "no free-boundary samples"));
  } else {
    Stopwatch sw(r, "lipschitz_envelope");
    PredicateReport rep;
    rep.name = "lipschitz_envelope";
    rep.worst_margin = std::numeric_limits<double>::infinity();
    double worst_match = 0.0, worst_lip = 0.0;
    for (std::size_t idx : windows) {
      const auto& smp = r.samples[idx];
      const ConeEnvelope env = attributed("free_boundary", [&] {
        return cone_envelope(r.samples, smp.normal, alpha, {smp.point, 8.0 * h});
      });
      const double lip = envelope_lipschitz(env);
      const double match = graph_match(env, r.samples, h);
      worst_match = std::max(worst_match, match);
      worst_lip = std::max(worst_lip, lip);
      const double margin = std::min(2.0 - match, alpha + 2.0 * h - lip);
      if (margin < rep.worst_margin) {
        rep.worst_margin = margin;
        rep.witness = {smp.point};
      }
      r.envelopes.push_back(env);
    }
    rep.samples_checked = windows.size();
    rep.pass = rep.worst_margin >= 0.0;
    if (rep.pass) rep.witness.clear();
    rep.note = "max graph distance " + num(worst_match) + " cells, max slope " + num(worst_lip);
    r.reports.push_back(rep);
  }

  if (!s.predicates.semiconvexity) {
    r.reports.push_back(skipped("semiconvexity", "disabled"));
  } else if (!envelope_ok) {
    r.reports.push_back(skipped("semiconvexity", n < 2 ? "needs dimension >= 2"
                                                       : "no free-boundary samples"));
  } else if (!order2 || !(k.b1 > 0.0) || !(k.c2 > 0.0)) {
    r.reports.push_back(skipped("semiconvexity", "radius b1/c2 undefined"));
  } else {
    Stopwatch sw(r, "semiconvexity");
    const double radius = k.b1 / k.c2;
    PredicateReport rep;
    rep.name = "semiconvexity";
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t idx : windows) {
      const auto& smp = r.samples[idx];
      const ConeEnvelope env = attributed("free_boundary", [&] {
        return level_set_envelope(field, smp.normal, alpha, {smp.point, 8.0 * h});
      });
      const PredicateReport one = check_semiconvexity(env, radius);
      rep.samples_checked += one.samples_checked;
      if (one.worst_margin < rep.worst_margin) {
        rep.worst_margin = one.worst_margin;
        rep.witness = one.witness;
      }
    }
    rep.pass = rep.worst_margin >= 0.0;
    if (rep.pass) rep.witness.clear();
    rep.note = "level-set envelopes, r = " + num(radius);
    r.reports.push_back(rep);
  }

  if (!s.predicates.c_convexity) {
    r.reports.push_back(skipped("c_convexity", "disabled"));
  } else if (r.target.size() < static_cast<std::size_t>(n) + 1) {
    r.reports.push_back(skipped("c_convexity", "fewer than n + 1 target samples"));
  } else {
    Stopwatch sw(r, "c_convexity");
    Point centroid = Point::Zero(n);
    for (const auto& p : r.source.support) centroid += p;
    centroid /= static_cast<double>(r.source.size());
    std::size_t best = 0;
    for (std::size_t i = 1; i < r.source.size(); ++i) {
      if ((r.source.support[i] - centroid).norm() < (r.source.support[best] - centroid).norm()) {
        best = i;
      }
    }
    DomainSample lambda{r.target.support, SampleRole::kTarget};
    r.reports.push_back(attributed("geometry_checks", [&] {
      return check_c_convexity(cost, r.source.support[best], lambda);
    }));
  }
}

void run_mtw(const Scenario& s, RunRecord& r, const CostModel& cost) {
  if (!s.predicates.mtw) {
    r.reports.push_back(skipped("mtw_a3", "disabled"));
    return;
  }
  if (cost.smoothness_order() < 4 || r.source.dimension() < 2) {
    r.reports.push_back(skipped("mtw_a3", "needs an order-4 cost in dimension >= 2"));
    return;
  }
  std::vector<std::pair<Point, Point>> pairs;
  for (std::size_t idx : spread(r.plan.entries.size(), 10)) {
    const auto& e = r.plan.entries[idx];
    pairs.emplace_back(r.source.support[e.source], r.target.support[e.target]);
  }
  Stopwatch sw(r, "mtw");
  PredicateReport rep;
  rep.name = "mtw_a3";
  try {
    r.a3 = a3_infimum(cost, pairs, 64, s.seed);
    rep.worst_margin = r.a3->defined ? r.a3->c0_estimate + 1e-8 : 0.0;
    rep.pass = rep.worst_margin >= 0.0;
    rep.samples_checked = r.a3->samples_checked;
    if (!rep.pass) rep.witness = {r.a3->argmin_x, r.a3->argmin_y};
    rep.note = "sampled minimum of the normalised MTW form (upper bound on inf); weak A3 sign test";
  } catch (const Error& e) {
    rep.pass = false;
    rep.worst_margin = -std::numeric_limits<double>::infinity();
    rep.note = std::string("mtw_verifier: ") + e.what();
  }
  r.reports.push_back(rep);
}

}  // namespace

bool RunRecord::all_pass() const {
  for (const auto& rep : reports) {
    if (!rep.as_expected()) return false;
  }
  return true;
}

RunRecord run_pipeline(const Scenario& s, Stage stage) {
  RunRecord r;
  r.digest = scenario_digest(s);
  r.seed = s.seed;
  r.type = s.type;
  r.cost = s.cost;
  if (s.type == "sphere_example") {
    run_sphere(s, r, stage);
    return r;
  }

  const auto cost = attributed("cost_models", [&] { return build_cost(s); });
  r.source = attributed("cli_io", [&] { return build_measure(s.source, s.dimension, s.seed); });
  r.target = attributed("cli_io", [&] {
    return build_measure(s.target, s.dimension, s.seed ^ 0x5bd1e995ULL);
  });
  const double m = s.mass_fraction * std::min(r.source.total_mass(), r.target.total_mass());
  {
    Stopwatch sw(r, "solve");
    attributed("partial_transport_solver", [&] {
      const Matrix c = pairwise_costs(r.source.support, r.target.support, *cost);
      r.plan = solve_partial(r.source.weights, r.target.weights, m, c);
      r.duality_violation = check_duality(r.plan, c);
      return 0;
    });
  }
  r.objective = r.plan.objective;
  r.mass = r.plan.mass;
  if (stage == Stage::kSolve) return r;

  if (stage == Stage::kMtw) {
    run_mtw(s, r, *cost);
    return r;
  }

  {
    Stopwatch sw(r, "constants");
    const DomainSample omega{r.source.support, SampleRole::kSource};
    const DomainSample lambda{r.target.support, SampleRole::kTarget};
    r.constants = attributed("cost_models", [&] { return estimate_constants(*cost, omega, lambda); });
  }
  if (r.constants->b1_warning) r.warnings.push_back("b1 at or below tolerance");

  if (s.cost == "sphere") {
    r.warnings.push_back("grid stages need a Euclidean cost; skipped");
    return r;
  }

  const EvaluationGrid grid = attributed("free_boundary", [&] {
    EvaluationGrid g = s.grid.lower
                           ? EvaluationGrid::covering_box(*s.grid.lower, *s.grid.upper,
                                                          s.grid.resolution, s.grid.margin_cells)
                           : EvaluationGrid::covering(r.source.support, s.grid.resolution,
                                                      s.grid.margin_cells);
    const double pad = 2.0 * g.cell_size();
    for (const auto& p : r.source.support) {
      if ((p.array() - g.lower().array() < pad).any() ||
          (g.upper().array() - p.array() < pad).any()) {
        fail(ErrorKind::kConfiguration, "grid must cover the source support with a 2h margin");
      }
    }
    return g;
  });
  {
    Stopwatch sw(r, "active_region");
    r.field = attributed("free_boundary", [&] {
      return active_region(r.plan, r.source, r.target, cost, grid);
    });
  }
  CellMask omega(grid.cell_count());
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    omega[c] = measure_domain_contains(s.source, r.source, grid.center(c));
  }
  r.samples = attributed("free_boundary", [&] { return extract_boundary(*r.field, omega, cost.get()); });
  if (stage == Stage::kBoundary) {
    if (grid.dimension() >= 2 && !r.samples.empty()) {
      const double alpha = 1.0 / std::tan(s.theta);
      for (std::size_t idx : window_centres(r.samples, grid, omega, s.envelope_windows)) {
        const auto& smp = r.samples[idx];
        r.envelopes.push_back(attributed("free_boundary", [&] {
          return cone_envelope(r.samples, smp.normal, alpha, {smp.point, 8.0 * grid.cell_size()});
        }));
      }
    }
    return r;
  }

  run_predicates(s, r, *cost, omega);
  run_mtw(s, r, *cost);
  return r;
}

fs::path write_record_json(const RunRecord& r, const fs::path& dir, const OutputOptions& opt) {
  json j;
  j["digest"] = r.digest;
  j["seed"] = r.seed;
  j["type"] = r.type;
  j["cost"] = r.cost;
  j["objective"] = r.objective;
  j["mass"] = r.mass;
  j["duality_violation"] = r.duality_violation;
  j["plan_entries"] = r.plan.entries.size();
  if (r.constants) {
    j["constants"] = {{"b0", r.constants->b0},
                      {"b1", r.constants->b1},
                      {"c2", r.constants->c2},
                      {"pairs_sampled", r.constants->pairs_sampled},
                      {"b1_warning", r.constants->b1_warning}};
  }
  if (r.profile) {
    j["cone_profile"] = {{"delta", r.profile->delta},
                         {"alpha", r.profile->alpha},
                         {"theta", r.profile->theta},
                         {"alpha_capped", r.profile->alpha_capped}};
  }
  if (r.field) {
    j["active_cells"] = r.field->active_count();
    j["grid_cells"] = r.field->grid.cell_count();
    j["cell_size"] = r.field->grid.cell_size();
  }
  j["boundary_samples"] = r.samples.size();
  json reps = json::array();
  for (const auto& rep : r.reports) reps.push_back(report_json(rep));
  j["reports"] = reps;
  if (r.a3) j["mtw"] = a3_json(*r.a3);
  j["warnings"] = r.warnings;
  j["all_pass"] = r.all_pass();
  if (opt.timings) {
    json t = json::object();
    for (const auto& [name, sec] : r.timings) t[name] = sec;
    j["timings"] = t;
  }
  const fs::path path = dir / "record.json";
  write_text(path, j.dump(2) + "\n");
  return path;
}

fs::path write_plan_csv(const RunRecord& r, const fs::path& dir) {
  std::string out = header(r) + "source,target,mass,dual_u,dual_v\n";
  for (const auto& e : r.plan.entries) {
    out += std::to_string(e.source) + "," + std::to_string(e.target) + "," + num(e.mass) + "," +
           num(r.plan.dual_u.at(e.source)) + "," + num(r.plan.dual_v.at(e.target)) + "\n";
  }
  const fs::path path = dir / "plan.csv";
  write_text(path, out);
  return path;
}

fs::path write_active_csv(const RunRecord& r, const fs::path& dir) {
  if (!r.field) fail(ErrorKind::kConfiguration, "no active region to write");
  const auto& g = r.field->grid;
  std::string out = header(r) + "# h=" + num(g.cell_size()) + " lower=";
  for (long a = 0; a < g.lower().size(); ++a) out += (a ? ";" : "") + num(g.lower()[a]);
  out += " resolution=";
  for (std::size_t a = 0; a < g.resolution().size(); ++a) {
    out += (a ? ";" : "") + std::to_string(g.resolution()[a]);
  }
  out += "\n";
  const int last = g.resolution().back();
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    out += r.field->active[c] ? '1' : '0';
    out += (static_cast<int>(c % last) == last - 1) ? '\n' : ',';
  }
  const fs::path path = dir / "active.csv";
  write_text(path, out);
  return path;
}

fs::path write_boundary_csv(const RunRecord& r, const fs::path& dir) {
  std::string out = header(r);
  const int n = r.field ? r.field->grid.dimension() : 0;
  std::string cols;
  for (const char* prefix : {"x", "nu", "y"}) {
    for (int a = 0; a < n; ++a) cols += std::string(prefix) + std::to_string(a) + ",";
  }
  out += cols + "threshold\n";
  for (const auto& s : r.samples) {
    for (const Vector* v : {&s.point, &s.normal, &s.target}) {
      for (long a = 0; a < v->size(); ++a) out += num((*v)[a]) + ",";
    }
    out += num(s.threshold) + "\n";
  }
  const fs::path path = dir / "boundary.csv";
  write_text(path, out);
  return path;
}

fs::path write_envelope_csv(const RunRecord& r, const fs::path& dir) {
  std::string out = header(r);
  const int d = r.envelopes.empty() ? 0 : r.envelopes.front().base_dimension();
  out += "window,";
  for (int a = 0; a < d; ++a) out += "z" + std::to_string(a) + ",";
  out += "phi\n";
  for (std::size_t w = 0; w < r.envelopes.size(); ++w) {
    const auto& env = r.envelopes[w];
    for (std::size_t k = 0; k < env.phi.size(); ++k) {
      out += std::to_string(w) + ",";
      const Vector z = env.node(k);
      for (long a = 0; a < z.size(); ++a) out += num(z[a]) + ",";
      out += num(env.phi[k]) + "\n";
    }
  }
  const fs::path path = dir / "envelope.csv";
  write_text(path, out);
  return path;
}

fs::path write_reports_json(const RunRecord& r, const fs::path& dir) {
  json j;
  j["digest"] = r.digest;
  j["seed"] = r.seed;
  json reps = json::array();
  for (const auto& rep : r.reports) reps.push_back(report_json(rep));
  j["reports"] = reps;
  const fs::path path = dir / "reports.json";
  write_text(path, j.dump(2) + "\n");
  return path;
}

fs::path write_summary_csv(const RunRecord& r, const fs::path& dir) {
  std::string out = header(r) + "predicate,status,worst_margin,samples_checked,expected_pass,note\n";
  for (const auto& rep : r.reports) {
    const std::string status = rep.skipped ? "skipped"
                               : rep.degenerate ? "degenerate"
                               : rep.pass       ? "pass"
                                                : "fail";
    std::string note = rep.note;
    for (char& ch : note) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    out += rep.name + "," + status + "," + num(rep.worst_margin) + "," +
           std::to_string(rep.samples_checked) + "," + (rep.expected_pass ? "true" : "false") +
           "," + note + "\n";
  }
  const fs::path path = dir / "summary.csv";
  write_text(path, out);
  return path;
}

fs::path write_mtw_json(const RunRecord& r, const fs::path& dir) {
  json j;
  j["digest"] = r.digest;
  j["seed"] = r.seed;
  if (r.a3) {
    j.update(a3_json(*r.a3));
  } else {
    j["c0_estimate"] = nullptr;
    j["defined"] = false;
    j["samples_checked"] = 0;
    for (const auto& rep : r.reports) {
      if (rep.name == "mtw_a3") j["note"] = rep.note;
    }
  }
  const fs::path path = dir / "mtw.json";
  write_text(path, j.dump(2) + "\n");
  return path;
}

fs::path write_sphere_json(const RunRecord& r, const fs::path& dir) {
  if (!r.sphere) fail(ErrorKind::kConfiguration, "no sphere example to write");
  const auto& ex = *r.sphere;
  json j;
  j["digest"] = r.digest;
  j["seed"] = r.seed;
  j["source_count"] = ex.source_count;
  j["target_count"] = ex.target_count;
  j["f_on_cap"] = ex.f_on_cap;
  j["g_on_cap"] = ex.g_on_cap;
  j["enlarged_excess"] = ex.enlarged_excess;
  j["mass"] = ex.mass;
  j["objective"] = ex.objective;
  j["north_active_mass"] = ex.north_active_mass;
  j["north_inactive"] = ex.north_inactive;
  j["max_transport_distance"] = ex.max_transport_distance;
  j["cut_locus_margin"] = ex.cut_margin;
  j["long_arcs"] = ex.long_arcs;
  j["tan_theta"] = ex.tan_theta;
  j["theta"] = ex.theta;
  j["chain_holds"] = ex.chain_holds;
  j["duality_violation"] = r.duality_violation;
  json reps = json::array();
  for (const auto& rep : r.reports) reps.push_back(report_json(rep));
  j["reports"] = reps;
  const fs::path path = dir / "sphere_report.json";
  write_text(path, j.dump(2) + "\n");
  return path;
}

fs::path write_sphere_boundary_csv(const RunRecord& r, const fs::path& dir) {
  if (!r.sphere) fail(ErrorKind::kConfiguration, "no sphere example to write");
  std::string out = header(r) + "source,polar,azimuth\n";
  for (const auto& b : r.sphere->boundary) {
    out += std::to_string(b.source) + "," + num(b.polar) + "," + num(b.azimuth) + "\n";
  }
  const fs::path path = dir / "sphere_boundary.csv";
  write_text(path, out);
  return path;
}

}  // namespace ptlab
