#include "ptlab/free_boundary.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "ptlab/error.hpp"

namespace ptlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Multi-index of node k on a (dims)-dimensional grid with p points per axis.
std::vector<int> node_coords(std::size_t k, int dims, int p) {
  std::vector<int> c(dims);
  for (int a = dims - 1; a >= 0; --a) {
    c[a] = static_cast<int>(k % p);
    k /= p;
  }
  return c;
}

std::size_t node_count(int dims, int p) {
  std::size_t count = 1;
  for (int a = 0; a < dims; ++a) count *= static_cast<std::size_t>(p);
  return count;
}

ConeEnvelope make_envelope(const Vector& base_normal, double alpha,
                           const EnvelopeWindow& window, int points_per_axis) {
  if (!(alpha > 0.0)) fail(ErrorKind::kRejectedInput, "envelope opening alpha must be positive");
  if (!(window.half_width > 0.0)) fail(ErrorKind::kRejectedInput, "envelope window is empty");
  if (points_per_axis < 3) fail(ErrorKind::kRejectedInput, "envelope needs at least 3 points per axis");
  if (base_normal.size() != window.center.size() || base_normal.size() < 2) {
    fail(ErrorKind::kRejectedInput, "envelope normal/window dimension mismatch");
  }
  ConeEnvelope env;
  env.origin = window.center;
  env.normal = base_normal.normalized();
  env.frame = base_frame(env.normal);
  env.alpha = alpha;
  env.half_width = window.half_width;
  env.points_per_axis = points_per_axis;
  env.spacing = 2.0 * window.half_width / (points_per_axis - 1);
  env.phi.assign(node_count(env.base_dimension(), points_per_axis), kNaN);
  return env;
}

bool in_box(const Vector& z, double half_width) {
  return (z.array().abs() <= half_width).all();
}

}  // namespace

bool ActiveRegionField::active_at(const Point& p) const {
  if (indicator) return grid.contains(p) && indicator(p);
  const auto cell = grid.locate(p);
  return cell && active[*cell] != 0;
}

std::size_t ActiveRegionField::active_count() const {
  return static_cast<std::size_t>(std::count(active.begin(), active.end(), 1));
}

ActiveRegionField ActiveRegionField::from_mask(EvaluationGrid grid, CellMask active,
                                               std::function<bool(const Point&)> indicator) {
  if (active.size() != grid.cell_count()) {
    fail(ErrorKind::kRejectedInput, "mask size does not match the grid");
  }
  ActiveRegionField field;
  field.witness.assign(grid.cell_count(), -1);
  field.witness_gap.assign(grid.cell_count(), kInf);
  field.grid = std::move(grid);
  field.active = std::move(active);
  field.indicator = std::move(indicator);
  return field;
}

std::pair<double, int> sublevel_gap(const std::vector<GeneratingPair>& pairs,
                                    const CostModel& cost, const Point& p) {
  double best = kInf;
  int arg = -1;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double gap = cost.value(p, pairs[k].target) - pairs[k].threshold;
    if (gap < best) {
      best = gap;
      arg = static_cast<int>(k);
    }
  }
  return {best, arg};
}

std::vector<GeneratingPair> generating_pairs(const TransportPlan& plan,
                                             const DiscreteMeasure& f,
                                             const DiscreteMeasure& g,
                                             const CostModel& cost) {
  std::vector<GeneratingPair> pairs;
  for (const auto& e : plan.entries) {
    if (e.mass <= 0.0) continue;
    if (e.source >= f.size() || e.target >= g.size()) {
      fail(ErrorKind::kRejectedInput, "plan refers to points outside the measures");
    }
    const Point& x = f.support[e.source];
    const Point& y = g.support[e.target];
    pairs.push_back({x, y, cost.value(x, y)});
  }
  return pairs;
}

ActiveRegionField active_region(std::vector<GeneratingPair> pairs,
                                std::shared_ptr<const CostModel> cost,
                                const EvaluationGrid& grid) {
  if (!cost) fail(ErrorKind::kRejectedInput, "active_region needs a cost");
  for (const auto& pr : pairs) {
    if (pr.source.size() != grid.dimension() || pr.target.size() != grid.dimension()) {
      fail(ErrorKind::kRejectedInput, "generating pair dimension does not match the grid");
    }
  }
  ActiveRegionField field;
  field.grid = grid;
  const long count = static_cast<long>(grid.cell_count());
  field.active.assign(count, 0);
  field.witness.assign(count, -1);
  field.witness_gap.assign(count, kInf);

  std::exception_ptr error;
#pragma omp parallel for schedule(static)
  for (long cell = 0; cell < count; ++cell) {
    try {
      const auto [gap, arg] = sublevel_gap(pairs, *cost, grid.center(cell));
      field.witness[cell] = arg;
      field.witness_gap[cell] = gap;
      field.active[cell] = gap < 0.0 ? 1 : 0;
    } catch (...) {
#pragma omp critical(ptlab_active_region)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  field.pairs = std::move(pairs);
  field.indicator = [pairs = field.pairs, cost](const Point& p) {
    return sublevel_gap(pairs, *cost, p).first < 0.0;
  };
  return field;
}

ActiveRegionField active_region(const TransportPlan& plan, const DiscreteMeasure& f,
                                const DiscreteMeasure& g,
                                std::shared_ptr<const CostModel> cost,
                                const EvaluationGrid& grid) {
  if (!cost) fail(ErrorKind::kRejectedInput, "active_region needs a cost");
  if (f.dimension() != grid.dimension()) {
    fail(ErrorKind::kRejectedInput, "grid dimension does not match the source measure");
  }
  return active_region(generating_pairs(plan, f, g, *cost), cost, grid);
}

Vector free_normal(const Point& x, const Point& y, const CostModel& cost) {
  const Vector gx = cost.grad_x(x, y);
  const double norm = gx.norm();
  if (!(norm > 1e-10)) {
    fail(ErrorKind::kDegenerateGradient, "grad_x c vanishes; the free normal is undefined");
  }
  return -gx / norm;
}

std::vector<FreeBoundarySample> extract_boundary(const ActiveRegionField& field,
                                                 const CellMask& omega_mask,
                                                 const CostModel* cost) {
  const auto& grid = field.grid;
  if (omega_mask.size() != grid.cell_count()) {
    fail(ErrorKind::kRejectedInput, "omega mask size does not match the grid");
  }
  const int n = grid.dimension();
  std::vector<FreeBoundarySample> out;
  for (std::size_t cell = 0; cell < grid.cell_count(); ++cell) {
    if (!field.is_active(cell) || !omega_mask[cell] || grid.on_edge(cell)) continue;
    const auto nbrs = grid.neighbors(cell);
    bool interior = true;
    bool interface = false;
    for (std::size_t nb : nbrs) {
      interior = interior && omega_mask[nb];
      interface = interface || !field.is_active(nb);
    }
    if (!interior || !interface) continue;

    FreeBoundarySample s;
    s.cell = cell;
    s.point = grid.center(cell);
    const int w = field.witness.empty() ? -1 : field.witness[cell];
    if (cost != nullptr && w >= 0) {
      const auto& pr = field.pairs[w];
      s.target = pr.target;
      s.threshold = pr.threshold;
      s.normal = free_normal(s.point, pr.target, *cost);
    } else {
      Vector dir = Vector::Zero(n);
      for (std::size_t nb : nbrs) {
        const Vector step = (grid.center(nb) - s.point) / grid.cell_size();
        dir += field.is_active(nb) ? step : -step;
      }
      if (dir.norm() == 0.0) continue;
      s.normal = dir.normalized();
      s.target = s.point;
    }
    out.push_back(std::move(s));
  }
  return out;
}

Matrix base_frame(const Vector& normal) {
  const int n = static_cast<int>(normal.size());
  if (n < 1 || !(normal.norm() > 0.0)) fail(ErrorKind::kRejectedInput, "base normal is zero");
  Matrix frame(n, n);
  frame.row(n - 1) = -normal.normalized().transpose();
  int filled = 0;
  for (int axis = 0; axis < n && filled < n - 1; ++axis) {
    Vector v = Vector::Unit(n, axis);
    for (int pass = 0; pass < 2; ++pass) {
      v -= frame.row(n - 1).transpose() * frame.row(n - 1).dot(v);
      for (int r = 0; r < filled; ++r) v -= frame.row(r).transpose() * frame.row(r).dot(v);
    }
    if (v.norm() < 1e-6) continue;
    frame.row(filled++) = v.normalized().transpose();
  }
  return frame;
}

Vector ConeEnvelope::node(std::size_t k) const {
  const int d = base_dimension();
  const auto c = node_coords(k, d, points_per_axis);
  Vector z(d);
  for (int a = 0; a < d; ++a) z[a] = -half_width + c[a] * spacing;
  return z;
}

Point ConeEnvelope::graph_point(std::size_t k) const {
  const int d = base_dimension();
  Vector local(d + 1);
  local.head(d) = node(k);
  local[d] = phi[k];
  return origin + frame.transpose() * local;
}

ConeEnvelope cone_envelope(const std::vector<FreeBoundarySample>& samples,
                           const Vector& base_normal, double alpha,
                           const EnvelopeWindow& window, int points_per_axis) {
  ConeEnvelope env = make_envelope(base_normal, alpha, window, points_per_axis);
  const int d = env.base_dimension();
  std::vector<Vector> local;
  for (const auto& s : samples) {
    const Vector z = env.frame * (s.point - env.origin);
    if (in_box(z, env.half_width)) local.push_back(z);
  }
  if (local.empty()) fail(ErrorKind::kRejectedInput, "no boundary samples inside the envelope window");
  for (std::size_t k = 0; k < env.phi.size(); ++k) {
    const Vector zp = env.node(k);
    double best = -kInf;
    for (const auto& z : local) {
      best = std::max(best, z[d] - alpha * (zp - z.head(d)).norm());
    }
    env.phi[k] = best;
  }
  return env;
}

ConeEnvelope level_set_envelope(const ActiveRegionField& field, const Vector& base_normal,
                                double alpha, const EnvelopeWindow& window,
                                int points_per_axis) {
  ConeEnvelope env = make_envelope(base_normal, alpha, window, points_per_axis);
  const int d = env.base_dimension();
  const int steps = 128;
  const double dt = 2.0 * env.half_width / steps;
  for (std::size_t k = 0; k < env.phi.size(); ++k) {
    Vector local(d + 1);
    local.head(d) = env.node(k);
    auto at = [&](double t) {
      local[d] = t;
      return field.active_at(env.origin + env.frame.transpose() * local);
    };
    // Crossing from active (below) to inactive (above) nearest to the base plane.
    double best_lo = kNaN;
    bool prev = at(-env.half_width);
    for (int i = 1; i <= steps; ++i) {
      const double t = -env.half_width + i * dt;
      const bool cur = at(t);
      if (prev && !cur) {
        const double lo = t - dt;
        if (std::isnan(best_lo) || std::abs(lo + 0.5 * dt) < std::abs(best_lo + 0.5 * dt)) {
          best_lo = lo;
        }
      }
      prev = cur;
    }
    if (std::isnan(best_lo)) continue;
    double lo = best_lo;
    double hi = best_lo + dt;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (at(mid) ? lo : hi) = mid;
    }
    env.phi[k] = 0.5 * (lo + hi);
  }
  return env;
}

ConeEnvelope tabulate_envelope(int dimension, double alpha, double half_width,
                               int points_per_axis,
                               const std::function<double(const Vector&)>& fn) {
  if (dimension < 2) fail(ErrorKind::kRejectedInput, "envelopes need dimension >= 2");
  const EnvelopeWindow window{Point::Zero(dimension), half_width};
  ConeEnvelope env = make_envelope(-Vector::Unit(dimension, dimension - 1), alpha, window,
                                   points_per_axis);
  for (std::size_t k = 0; k < env.phi.size(); ++k) env.phi[k] = fn(env.node(k));
  return env;
}

double envelope_lipschitz(const ConeEnvelope& env) {
  const int d = env.base_dimension();
  const int p = env.points_per_axis;
  double worst = 0.0;
  for (std::size_t k = 0; k < env.phi.size(); ++k) {
    const auto c = node_coords(k, d, p);
    std::size_t stride = 1;
    for (int a = d - 1; a >= 0; --a) {
      if (c[a] + 1 < p) {
        const double u = env.phi[k];
        const double v = env.phi[k + stride];
        if (std::isfinite(u) && std::isfinite(v)) {
          worst = std::max(worst, std::abs(v - u) / env.spacing);
        }
      }
      stride *= static_cast<std::size_t>(p);
    }
  }
  return worst;
}

double graph_match(const ConeEnvelope& env, const std::vector<FreeBoundarySample>& samples,
                   double cell_size) {
  if (!(cell_size > 0.0)) fail(ErrorKind::kRejectedInput, "cell size must be positive");
  std::vector<Point> inside;
  for (const auto& s : samples) {
    if (in_box(env.frame * (s.point - env.origin), env.half_width)) inside.push_back(s.point);
  }
  std::vector<Point> graph;
  std::vector<char> inner;
  for (std::size_t k = 0; k < env.phi.size(); ++k) {
    if (!std::isfinite(env.phi[k])) continue;
    graph.push_back(env.graph_point(k));
    inner.push_back((env.node(k).array().abs() <= 0.5 * env.half_width + 1e-12).all());
  }
  if (inside.empty() || graph.empty()) {
    fail(ErrorKind::kRejectedInput, "graph_match needs samples and graph points in the window");
  }
  double worst = 0.0;
  for (const auto& s : inside) {
    double best = kInf;
    for (const auto& gpt : graph) best = std::min(best, (s - gpt).norm());
    worst = std::max(worst, best);
  }
  for (std::size_t k = 0; k < graph.size(); ++k) {
    if (!inner[k]) continue;
    double best = kInf;
    for (const auto& s : inside) best = std::min(best, (s - graph[k]).norm());
    worst = std::max(worst, best);
  }
  return worst / cell_size;
}

double normal_field_holder(const std::vector<FreeBoundarySample>& samples, double exponent) {
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const double dist = (samples[i].point - samples[j].point).norm();
      if (dist <= 0.0) continue;
      const double dn = (samples[i].normal - samples[j].normal).norm();
      worst = std::max(worst, dn / std::pow(dist, exponent));
    }
  }
  return worst;
}

}  // namespace ptlab
