#include "ptlab/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"
#include "ptlab/costs.hpp"
#include "ptlab/error.hpp"
#include "ptlab/sphere.hpp"

namespace ptlab {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  fail(ErrorKind::kConfiguration, "scenario field '" + field + "': " + what);
}

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
  if (!obj.is_object()) bad(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) bad(where.empty() ? key : where + "." + key, "unknown key");
  }
}

template <typename T>
T get(const json& obj, const std::string& key, const std::string& path, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    bad(path + key, "has the wrong type");
  }
}

Point get_point(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty()) bad(field, "expected a non-empty array of numbers");
  Point p(static_cast<long>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) bad(field, "expected numbers");
    p[static_cast<long>(i)] = v[i].get<double>();
  }
  return p;
}

json point_json(const Point& p) {
  json a = json::array();
  for (long i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

MeasureSpec parse_measure(const json& j, const std::string& name) {
  reject_unknown(j, name, {"kind", "points", "weights", "lower", "upper", "count", "center",
                           "radius", "height", "samples", "total_mass"});
  MeasureSpec m;
  const std::string p = name + ".";
  m.kind = get<std::string>(j, "kind", p, "points");
  m.total_mass = get<double>(j, "total_mass", p, 1.0);
  if (!(m.total_mass > 0.0)) bad(p + "total_mass", "must be positive");
  if (m.kind == "points") {
    if (!j.contains("points") || !j["points"].is_array() || j["points"].empty()) {
      bad(p + "points", "measure is empty");
    }
    for (const auto& v : j["points"]) m.points.push_back(get_point(v, p + "points"));
    if (j.contains("weights")) {
      m.weights = get<std::vector<double>>(j, "weights", p, {});
      if (m.weights.size() != m.points.size()) bad(p + "weights", "length differs from points");
    }
  } else if (m.kind == "grid") {
    if (!j.contains("lower") || !j.contains("upper") || !j.contains("count")) {
      bad(name, "grid measures need lower, upper and count");
    }
    m.lower = get_point(j["lower"], p + "lower");
    m.upper = get_point(j["upper"], p + "upper");
    m.count = get<std::vector<int>>(j, "count", p, {});
    if (m.count.size() != static_cast<std::size_t>(m.lower.size()) ||
        m.upper.size() != m.lower.size()) {
      bad(name, "lower, upper and count disagree in dimension");
    }
    for (int c : m.count) {
      if (c < 1) bad(p + "count", "measure is empty");
    }
  } else if (m.kind == "ball") {
    if (!j.contains("center")) bad(p + "center", "is required");
    m.center = get_point(j["center"], p + "center");
    m.radius = get<double>(j, "radius", p, 0.0);
    m.samples = get<int>(j, "samples", p, 0);
    if (!(m.radius > 0.0)) bad(p + "radius", "must be positive");
    if (m.samples < 1) bad(p + "samples", "measure is empty");
  } else if (m.kind == "sphere_cap") {
    if (!j.contains("center")) bad(p + "center", "is required");
    m.center = get_point(j["center"], p + "center");
    m.height = get<double>(j, "height", p, 0.0);
    m.samples = get<int>(j, "samples", p, 0);
    if (m.center.size() != 3) bad(p + "center", "sphere caps live on S^2");
    if (!(m.height > 0.0) || m.height > 2.0) bad(p + "height", "must lie in (0, 2]");
    if (m.samples < 1) bad(p + "samples", "measure is empty");
  } else {
    bad(p + "kind", "must be points, grid, ball or sphere_cap");
  }
  return m;
}

json measure_json(const MeasureSpec& m) {
  json j;
  j["kind"] = m.kind;
  j["total_mass"] = m.total_mass;
  if (m.kind == "points") {
    json pts = json::array();
    for (const auto& p : m.points) pts.push_back(point_json(p));
    j["points"] = pts;
    if (!m.weights.empty()) j["weights"] = m.weights;
  } else if (m.kind == "grid") {
    j["lower"] = point_json(m.lower);
    j["upper"] = point_json(m.upper);
    j["count"] = m.count;
  } else if (m.kind == "ball") {
    j["center"] = point_json(m.center);
    j["radius"] = m.radius;
    j["samples"] = m.samples;
  } else {
    j["center"] = point_json(m.center);
    j["height"] = m.height;
    j["samples"] = m.samples;
  }
  return j;
}

int measure_dimension(const MeasureSpec& m) {
  if (m.kind == "points") return static_cast<int>(m.points.front().size());
  if (m.kind == "grid") return static_cast<int>(m.lower.size());
  return static_cast<int>(m.center.size());
}

std::uint64_t splitmix(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorKind::kParse, "scenario parse error at line " + std::to_string(line) +
                                ", column " + std::to_string(col) + ": " + e.what());
  }
  reject_unknown(doc, "", {"type", "cost", "dimension", "source", "target", "mass_fraction",
                           "grid", "predicates", "theta", "seed", "envelope_windows", "sphere"});
  Scenario s;
  s.type = get<std::string>(doc, "type", "", "euclidean");
  if (s.type != "euclidean" && s.type != "sphere_example") {
    bad("type", "must be euclidean or sphere_example");
  }
  if (doc.contains("cost")) {
    const json& c = doc["cost"];
    if (c.is_string()) {
      s.cost = c.get<std::string>();
    } else {
      reject_unknown(c, "cost", {"id", "floor"});
      s.cost = get<std::string>(c, "id", "cost.", "quadratic");
      if (c.contains("floor")) {
        s.separation_floor = get<double>(c, "floor", "cost.", 0.0);
        if (!(*s.separation_floor > 0.0)) bad("cost.floor", "must be positive");
      }
    }
  }
  if (!CostRegistry::instance().contains(s.cost)) {
    try {
      CostRegistry::instance().make(s.cost);
    } catch (const Error& e) {
      fail(ErrorKind::kConfiguration, std::string("scenario field 'cost': ") + e.what());
    }
  }
  s.seed = get<std::uint64_t>(doc, "seed", "", 0);
  s.theta = get<double>(doc, "theta", "", s.theta);
  if (!(s.theta > 0.0) || !(s.theta < std::numbers::pi / 2)) bad("theta", "must lie in (0, pi/2)");
  s.envelope_windows = get<int>(doc, "envelope_windows", "", 10);
  if (s.envelope_windows < 1) bad("envelope_windows", "must be positive");
  s.mass_fraction = get<double>(doc, "mass_fraction", "", 1.0);
  if (!(s.mass_fraction > 0.0) || s.mass_fraction > 1.0) {
    bad("mass_fraction", "must lie in (0, 1]");
  }

  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    reject_unknown(g, "grid", {"resolution", "margin_cells", "lower", "upper"});
    s.grid.resolution = get<int>(g, "resolution", "grid.", 64);
    s.grid.margin_cells = get<int>(g, "margin_cells", "grid.", 2);
    if (g.contains("lower") != g.contains("upper")) bad("grid", "lower and upper go together");
    if (g.contains("lower")) {
      s.grid.lower = get_point(g["lower"], "grid.lower");
      s.grid.upper = get_point(g["upper"], "grid.upper");
    }
  }
  if (s.grid.resolution < 8) bad("grid.resolution", "must be at least 8");
  if (s.grid.margin_cells < 2) bad("grid.margin_cells", "must be at least 2");

  if (doc.contains("predicates")) {
    const json& p = doc["predicates"];
    reject_unknown(p, "predicates",
                   {"cone", "ball", "lipschitz", "semiconvexity", "c_convexity", "mtw"});
    s.predicates.cone = get<bool>(p, "cone", "predicates.", true);
    s.predicates.ball = get<bool>(p, "ball", "predicates.", true);
    s.predicates.lipschitz = get<bool>(p, "lipschitz", "predicates.", true);
    s.predicates.semiconvexity = get<bool>(p, "semiconvexity", "predicates.", true);
    s.predicates.c_convexity = get<bool>(p, "c_convexity", "predicates.", true);
    s.predicates.mtw = get<bool>(p, "mtw", "predicates.", true);
  }
  if (doc.contains("sphere")) {
    const json& sp = doc["sphere"];
    reject_unknown(sp, "sphere", {"resolution", "rho", "mass_margin"});
    s.sphere.resolution = get<std::size_t>(sp, "resolution", "sphere.", 1000);
    s.sphere.rho = get<double>(sp, "rho", "sphere.", 0.1);
    s.sphere.mass_margin = get<double>(sp, "mass_margin", "sphere.", 1e-9);
    if (s.sphere.resolution < 500) bad("sphere.resolution", "must be at least 500");
    if (!(s.sphere.rho > 0.0)) bad("sphere.rho", "must be positive");
  }

  if (s.type == "euclidean") {
    if (!doc.contains("source")) bad("source", "measure is empty");
    if (!doc.contains("target")) bad("target", "measure is empty");
    s.source = parse_measure(doc["source"], "source");
    s.target = parse_measure(doc["target"], "target");
    s.dimension = get<int>(doc, "dimension", "", measure_dimension(s.source));
    if (measure_dimension(s.source) != s.dimension || measure_dimension(s.target) != s.dimension) {
      bad("dimension", "does not match the measures");
    }
  } else {
    s.cost = "sphere";
    s.dimension = 2;
    if (doc.contains("source") || doc.contains("target")) {
      bad("source", "sphere_example builds its own measures");
    }
  }
  if (s.grid.lower && (s.grid.lower->size() != s.dimension || s.grid.upper->size() != s.dimension)) {
    bad("grid.lower", "dimension does not match the scenario");
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kConfiguration, "cannot read scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string canonical_json(const Scenario& s) {
  json j;
  j["type"] = s.type;
  json cost;
  cost["id"] = s.cost;
  if (s.separation_floor) cost["floor"] = *s.separation_floor;
  j["cost"] = cost;
  j["dimension"] = s.dimension;
  if (s.type == "euclidean") {
    j["source"] = measure_json(s.source);
    j["target"] = measure_json(s.target);
  }
  j["mass_fraction"] = s.mass_fraction;
  json grid;
  grid["resolution"] = s.grid.resolution;
  grid["margin_cells"] = s.grid.margin_cells;
  if (s.grid.lower) {
    grid["lower"] = point_json(*s.grid.lower);
    grid["upper"] = point_json(*s.grid.upper);
  }
  j["grid"] = grid;
  j["predicates"] = {{"cone", s.predicates.cone},
                     {"ball", s.predicates.ball},
                     {"lipschitz", s.predicates.lipschitz},
                     {"semiconvexity", s.predicates.semiconvexity},
                     {"c_convexity", s.predicates.c_convexity},
                     {"mtw", s.predicates.mtw}};
  j["theta"] = s.theta;
  j["seed"] = s.seed;
  j["envelope_windows"] = s.envelope_windows;
  j["sphere"] = {{"resolution", s.sphere.resolution},
                 {"rho", s.sphere.rho},
                 {"mass_margin", s.sphere.mass_margin}};
  return j.dump();
}

std::string scenario_digest(const Scenario& s) {
  const std::string text = canonical_json(s);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorKind::kInternal, "SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::shared_ptr<const CostModel> build_cost(const Scenario& s) {
  if (s.separation_floor) {
    std::shared_ptr<RadialCost> radial;
    if (s.cost == "log") radial = std::make_shared<LogCost>();
    if (s.cost == "quadratic") radial = std::make_shared<QuadraticCost>();
    if (s.cost == "sqrtplus") radial = std::make_shared<SqrtPlusCost>();
    if (!radial) bad("cost.floor", "only radial built-in costs take a separation floor");
    radial->set_separation_floor(*s.separation_floor);
    return radial;
  }
  return make_cost(s.cost);
}

DiscreteMeasure build_measure(const MeasureSpec& spec, int dimension, std::uint64_t seed) {
  std::vector<Point> pts;
  if (spec.kind == "points") {
    pts = spec.points;
  } else if (spec.kind == "grid") {
    std::size_t total = 1;
    for (int c : spec.count) total *= static_cast<std::size_t>(c);
    pts.reserve(total);
    for (std::size_t k = 0; k < total; ++k) {
      std::size_t rest = k;
      Point p(dimension);
      for (int a = dimension - 1; a >= 0; --a) {
        const int i = static_cast<int>(rest % spec.count[a]);
        rest /= spec.count[a];
        const double h = (spec.upper[a] - spec.lower[a]) / spec.count[a];
        p[a] = spec.lower[a] + (i + 0.5) * h;
      }
      pts.push_back(p);
    }
  } else if (spec.kind == "ball") {
    std::uint64_t state = seed;
    while (static_cast<int>(pts.size()) < spec.samples) {
      Point u(dimension);
      for (int a = 0; a < dimension; ++a) {
        u[a] = 2.0 * (static_cast<double>(splitmix(state) >> 11) * 0x1.0p-53) - 1.0;
      }
      if (u.squaredNorm() < 1.0) pts.push_back(spec.center + spec.radius * u);
    }
  } else {
    pts = cap_sample(SpherePoint(spec.center), std::acos(1.0 - spec.height),
                     static_cast<std::size_t>(spec.samples));
  }
  std::vector<double> w = spec.weights;
  if (w.empty()) w.assign(pts.size(), spec.total_mass / static_cast<double>(pts.size()));
  try {
    return DiscreteMeasure::make(std::move(pts), std::move(w));
  } catch (const Error& e) {
    fail(ErrorKind::kConfiguration, std::string("measure: ") + e.what());
  }
}

bool measure_domain_contains(const MeasureSpec& spec, const DiscreteMeasure& mu,
                             const Point& p) {
  if (spec.kind == "grid") {
    return (p.array() >= spec.lower.array()).all() && (p.array() <= spec.upper.array()).all();
  }
  if (spec.kind == "ball") return (p - spec.center).norm() <= spec.radius;
  if (spec.kind == "sphere_cap") return false;
  Point lo = mu.support.front(), hi = mu.support.front();
  for (const auto& q : mu.support) {
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
}

}  // namespace ptlab
