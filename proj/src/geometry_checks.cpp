#include "ptlab/geometry_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/SVD>

#include "ptlab/distance_transform.hpp"
#include "ptlab/error.hpp"

namespace ptlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double unit_uniform(std::uint64_t& state) {
  // splitmix64
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

// Unit directions in a local frame whose last axis is the cone axis, all at
// angle strictly below theta from it.
std::vector<Vector> cone_fan(int n, double theta, int rays, std::uint64_t seed) {
  std::vector<Vector> fan;
  Vector axis = Vector::Unit(n, n - 1);
  fan.push_back(axis);
  if (n == 2) {
    for (int k = 0; k < rays; ++k) {
      const double psi = theta * (-1.0 + (2.0 * k + 1.0) / rays);
      Vector d(2);
      d << std::sin(psi), std::cos(psi);
      fan.push_back(d);
    }
    return fan;
  }
  std::uint64_t state = seed;
  for (int k = 0; k < rays; ++k) {
    Vector w(n - 1);
    for (int a = 0; a < n - 1; ++a) {
      const double u1 = std::max(unit_uniform(state), 1e-300);
      const double u2 = unit_uniform(state);
      w[a] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
    if (w.norm() == 0.0) w = Vector::Unit(n - 1, 0);
    w.normalize();
    const double psi = theta * (k + 0.5) / rays;
    Vector d(n);
    d.head(n - 1) = std::sin(psi) * w;
    d[n - 1] = std::cos(psi);
    fan.push_back(d);
  }
  return fan;
}

struct Worst {
  double margin = kInf;
  std::vector<Point> witness;
  std::size_t checked = 0;
};

void merge(Worst& into, const Worst& w) {
  into.checked += w.checked;
  if (w.margin < into.margin) {
    into.margin = w.margin;
    into.witness = w.witness;
  }
}

PredicateReport finish(std::string name, const Worst& w, std::size_t samples) {
  PredicateReport r;
  r.name = std::move(name);
  r.samples_checked = samples;
  r.worst_margin = w.checked == 0 ? 0.0 : w.margin;
  r.pass = r.worst_margin >= 0.0;
  if (!r.pass) r.witness = w.witness;
  return r;
}

}  // namespace

ConeProfile cone_profile(const CostModel& cost, const CostConstants& constants, double theta) {
  cost.require_order(2, "cone_profile");
  if (!(theta >= 0.0) || !(theta < std::numbers::pi / 2)) {
    fail(ErrorKind::kDomain, "cone half-angle must lie in (0, pi/2)");
  }
  if (!(constants.b1 > 0.0)) fail(ErrorKind::kDegenerate, "cone_profile needs b1 > 0");
  if (!(constants.c2 > 0.0)) fail(ErrorKind::kDegenerate, "cone_profile needs c2 > 0");
  ConeProfile p;
  p.theta = theta;
  const double alpha = theta > 0.0 ? 1.0 / std::tan(theta) : kInf;
  p.alpha_capped = !(alpha <= kMaxConeAlpha);
  p.alpha = p.alpha_capped ? kMaxConeAlpha : alpha;
  p.delta = constants.b1 * std::cos(theta) / (2.0 * constants.c2);
  return p;
}

PredicateReport check_cone_condition(const ActiveRegionField& field,
                                     const std::vector<FreeBoundarySample>& samples,
                                     const ConeProfile& profile, int rays,
                                     std::uint64_t seed) {
  if (samples.empty()) fail(ErrorKind::kRejectedInput, "cone check needs boundary samples");
  if (rays < 64) fail(ErrorKind::kRejectedInput, "cone check needs at least 64 rays");
  if (!(profile.delta > 0.0) || !(profile.alpha > 0.0)) {
    fail(ErrorKind::kRejectedInput, "cone profile must be positive");
  }
  const auto& grid = field.grid;
  const int n = grid.dimension();
  const double theta = std::atan(1.0 / profile.alpha);
  const auto fan = cone_fan(n, theta, rays, seed);
  const auto sd = signed_distance(grid, field.active);

  const long count = static_cast<long>(samples.size());
  std::vector<Worst> per(count);
#pragma omp parallel for schedule(dynamic, 8)
  for (long s = 0; s < count; ++s) {
    const auto& smp = samples[s];
    const Matrix to_world = base_frame(-smp.normal).transpose();
    Worst w;
    for (const auto& local : fan) {
      const Vector dir = to_world * local;
      for (int k = 1; k <= 8; ++k) {
        const Point p = smp.point + profile.delta * k / 8.0 * dir;
        const auto cell = grid.locate(p);
        if (!cell) continue;
        ++w.checked;
        const double mag = std::abs(sd[*cell]);
        const double margin = field.active_at(p) ? mag : -mag;
        if (margin < w.margin) {
          w.margin = margin;
          w.witness = {smp.point, p};
        }
      }
    }
    per[s] = std::move(w);
  }
  Worst total;
  for (const auto& w : per) merge(total, w);
  auto report = finish("cone_condition", total, samples.size());
  report.note = "tested " + std::to_string(fan.size()) + " rays x 8 radii per sample";
  return report;
}

PredicateReport check_ball_condition(const ActiveRegionField& field,
                                     const std::vector<FreeBoundarySample>& samples,
                                     const CostConstants& constants,
                                     const BallOptions& options) {
  double radius = 0.0;
  if (options.radius) {
    radius = *options.radius;
  } else {
    if (!(constants.b1 > 0.0) || !(constants.c2 > 0.0)) {
      fail(ErrorKind::kDegenerate, "ball condition needs b1 > 0 and c2 > 0");
    }
    radius = options.factor * constants.b1 / constants.c2;
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    fail(ErrorKind::kDegenerate, "ball radius must be positive and finite");
  }
  const auto& grid = field.grid;
  const int n = grid.dimension();
  const double h = grid.cell_size();
  const auto sd = signed_distance(grid, field.active);

  const long count = static_cast<long>(samples.size());
  std::vector<Worst> per(count);
#pragma omp parallel for schedule(dynamic, 8)
  for (long s = 0; s < count; ++s) {
    const auto& smp = samples[s];
    const Point c = smp.point + radius * smp.normal;
    std::vector<int> lo(n), hi(n);
    for (int a = 0; a < n; ++a) {
      lo[a] = std::max(0, static_cast<int>(std::floor((c[a] - radius - grid.lower()[a]) / h)));
      hi[a] = std::min(grid.resolution()[a] - 1,
                       static_cast<int>(std::floor((c[a] + radius - grid.lower()[a]) / h)));
    }
    Worst w;
    bool empty = false;
    for (int a = 0; a < n; ++a) empty = empty || lo[a] > hi[a];
    if (!empty) {
      std::vector<int> idx = lo;
      while (true) {
        const std::size_t cell = grid.index(idx);
        const Point p = grid.center(cell);
        if ((p - c).norm() < radius) {
          ++w.checked;
          if (sd[cell] < w.margin) {
            w.margin = sd[cell];
            w.witness = {smp.point, p};
          }
        }
        int a = n - 1;
        while (a >= 0 && ++idx[a] > hi[a]) {
          idx[a] = lo[a];
          --a;
        }
        if (a < 0) break;
      }
    }
    per[s] = std::move(w);
  }
  Worst total;
  for (const auto& w : per) merge(total, w);
  auto report = finish("ball_condition", total, samples.size());
  report.note = "radius " + std::to_string(radius);
  return report;
}

double region_inradius(const ActiveRegionField& field) {
  const auto sd = signed_distance(field.grid, field.active, true);
  double best = 0.0;
  for (double v : sd) best = std::max(best, v);
  return best;
}

PredicateReport check_semiconvexity(const ConeEnvelope& env, double r, double tolerance) {
  if (!(r > 0.0)) fail(ErrorKind::kDomain, "semiconvexity radius must be positive");
  const int d = env.base_dimension();
  const int p = env.points_per_axis;
  if (p < 3) fail(ErrorKind::kRejectedInput, "semiconvexity needs 3 points per axis");
  const double h = env.spacing;
  const double bound = h * h / r * (1.0 + tolerance);
  Worst w;
  std::vector<std::size_t> stride(d, 1);
  for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * p;
  for (std::size_t k = 0; k < env.phi.size(); ++k) {
    std::size_t rest = k;
    for (int a = 0; a < d; ++a) {
      const int c = static_cast<int>((rest / stride[a]) % p);
      if (c == 0 || c == p - 1) continue;
      const double lo = env.phi[k - stride[a]];
      const double mid = env.phi[k];
      const double up = env.phi[k + stride[a]];
      if (!std::isfinite(lo) || !std::isfinite(mid) || !std::isfinite(up)) continue;
      ++w.checked;
      const double margin = lo + up - 2.0 * mid + bound;
      if (margin < w.margin) {
        w.margin = margin;
        w.witness = {env.graph_point(k)};
      }
    }
  }
  auto report = finish("semiconvexity", w, w.checked);
  if (w.checked == 0) report.note = "no complete second differences in the window";
  return report;
}

namespace {

struct CoverageGap {
  double gap = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
};

}  // namespace

PredicateReport check_midpoint_coverage(const std::vector<Vector>& image) {
  PredicateReport report;
  report.name = "c_convexity";
  const long count = static_cast<long>(image.size());
  if (count < 2) fail(ErrorKind::kRejectedInput, "c-convexity needs at least two image points");
  const int dim = static_cast<int>(image.front().size());

  Matrix centered(count, dim);
  Vector mean = Vector::Zero(dim);
  for (const auto& v : image) mean += v;
  mean /= static_cast<double>(count);
  for (long i = 0; i < count; ++i) centered.row(i) = (image[i] - mean).transpose();
  const Eigen::JacobiSVD<Matrix> svd(centered);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv[0] : 0.0;
  int rank = 0;
  for (long k = 0; k < sv.size(); ++k) rank += sv[k] > 1e-9 * std::max(top, 1.0) ? 1 : 0;
  if (rank <= 1) {
    report.degenerate = true;
    report.pass = true;
    report.samples_checked = count;
    report.note = "image is degenerate (rank " + std::to_string(rank) + ")";
    return report;
  }

  std::vector<double> nearest(count, kInf);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) {
    for (long j = 0; j < count; ++j) {
      if (i != j) nearest[i] = std::min(nearest[i], (image[i] - image[j]).norm());
    }
  }
  const double tol = 2.0 * *std::max_element(nearest.begin(), nearest.end());

  std::vector<CoverageGap> per(count);
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < count; ++i) {
    CoverageGap best{-1.0, static_cast<std::size_t>(i), static_cast<std::size_t>(i)};
    for (long j = i + 1; j < count; ++j) {
      const Vector mid = 0.5 * (image[i] + image[j]);
      double gap = kInf;
      for (long k = 0; k < count && gap > 0.0; ++k) gap = std::min(gap, (mid - image[k]).norm());
      if (gap > best.gap) best = {gap, static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
    }
    per[i] = best;
  }
  CoverageGap worst{-1.0, 0, 0};
  for (const auto& g : per) {
    if (g.gap > worst.gap) worst = g;
  }
  report.samples_checked = count;
  report.worst_margin = tol - worst.gap;
  report.pass = report.worst_margin >= 0.0;
  if (!report.pass) report.witness = {image[worst.i], image[worst.j]};
  report.note = "midpoint tolerance " + std::to_string(tol);
  return report;
}

PredicateReport check_c_convexity(const CostModel& cost, const Point& x,
                                  const DomainSample& lambda) {
  cost.require_order(1, "check_c_convexity");
  const int n = static_cast<int>(x.size());
  if (lambda.points.size() < static_cast<std::size_t>(n) + 1) {
    fail(ErrorKind::kRejectedInput, "c-convexity needs at least n + 1 target samples");
  }
  std::vector<Vector> image(lambda.points.size());
  const long count = static_cast<long>(image.size());
  for (long k = 0; k < count; ++k) image[k] = cost.grad_x(x, lambda.points[k]);
  auto report = check_midpoint_coverage(image);
  if (!report.pass) {
    // Translate the witness back to the targets.
    std::vector<Point> w;
    for (const auto& v : report.witness) {
      for (long k = 0; k < count; ++k) {
        if (image[k] == v) {
          w.push_back(lambda.points[k]);
          break;
        }
      }
    }
    report.witness = std::move(w);
    report.witness.insert(report.witness.begin(), x);
  }
  return report;
}

double curvature_threshold(double a1, double a2, int n) {
  if (!(a1 > 0.0)) fail(ErrorKind::kDomain, "curvature_threshold needs a1 > 0");
  return std::pow(a2, n) / a1;
}

double holder_exponent(double p, int n) {
  if (n < 1) fail(ErrorKind::kDomain, "holder_exponent needs n >= 1");
  if (std::isinf(p) && p > 0.0) return 1.0 / (2.0 * n - 1.0);
  if (!(p > (n + 1) / 2.0)) {
    fail(ErrorKind::kDomain, "holder_exponent needs p > (n + 1) / 2");
  }
  return (2.0 * p - n - 1.0) / (2.0 * p * (2.0 * n - 1.0) - n + 1.0);
}

}  // namespace ptlab
