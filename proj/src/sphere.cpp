#include "ptlab/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ptlab/error.hpp"
#include "ptlab/free_boundary.hpp"

namespace ptlab {

namespace {

const double kGoldenAngle = std::numbers::pi * (3.0 - std::sqrt(5.0));
constexpr double kCutTolerance = 1e-6;

// Orthonormal basis of the tangent plane at base, one vector per row.
Matrix tangent_basis(const Vector& base) {
  const Matrix frame = base_frame(base);
  return frame.topRows(frame.rows() - 1);
}

double clamped_dot(const Vector& x, const Vector& y) {
  return std::clamp(x.dot(y), -1.0, 1.0);
}

}  // namespace

SpherePoint::SpherePoint(const Vector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm) || v.size() < 2) {
    fail(ErrorKind::kRejectedInput, "sphere point must be a finite nonzero vector");
  }
  v_ = v / norm;
}

SpherePoint SpherePoint::north(int ambient) {
  return SpherePoint(Vector::Unit(ambient, ambient - 1));
}

SpherePoint SpherePoint::south(int ambient) {
  return SpherePoint(-Vector::Unit(ambient, ambient - 1));
}

SphericalCap::SphericalCap(SpherePoint c, double h) : center(std::move(c)), height(h) {
  if (!(h >= 0.0) || h > 2.0) fail(ErrorKind::kRejectedInput, "cap height must lie in [0, 2]");
}

bool SphericalCap::contains(const Vector& v) const {
  return v.dot(center.vec()) >= 1.0 - height;
}

double SphericalCap::angular_radius() const { return std::acos(std::clamp(1.0 - height, -1.0, 1.0)); }

double geodesic_distance(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) fail(ErrorKind::kRejectedInput, "sphere points differ in dimension");
  return std::acos(clamped_dot(x, y));
}

double geodesic_cost(const Vector& x, const Vector& y) {
  const double d = geodesic_distance(x, y);
  return 0.5 * d * d;
}

Vector log_map(const Vector& base, const Vector& x) {
  if (base.size() != x.size()) fail(ErrorKind::kRejectedInput, "sphere points differ in dimension");
  const double c = base.dot(x);
  const Vector w = x - c * base;
  const double s = w.norm();
  const double d = std::atan2(s, c);
  if (d >= std::numbers::pi - kCutTolerance) {
    fail(ErrorKind::kCutLocus, "point lies on the cut locus (antipode) of the base");
  }
  if (s == 0.0) return Vector::Zero(base.size());
  return (d / s) * w;
}

Vector exp_map(const Vector& base, const Vector& v) {
  if (base.size() != v.size()) fail(ErrorKind::kRejectedInput, "tangent vector dimension mismatch");
  const Vector t = v - base.dot(v) * base;
  const double r = t.norm();
  if (r == 0.0) return base;
  return std::cos(r) * base + (std::sin(r) / r) * t;
}

double SphereCost::value(const Point& x, const Point& y) const { return geodesic_cost(x, y); }

Vector SphereCost::grad_x(const Point& x, const Point& y) const { return -log_map(x, y); }

Vector SphereCost::grad_y(const Point& x, const Point& y) const { return -log_map(y, x); }

std::vector<Point> fibonacci_sphere(std::size_t count) {
  if (count == 0) fail(ErrorKind::kRejectedInput, "fibonacci_sphere needs a positive count");
  std::vector<Point> pts(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = kGoldenAngle * static_cast<double>(i);
    Point p(3);
    p << r * std::cos(phi), r * std::sin(phi), z;
    pts[i] = p;
  }
  return pts;
}

std::vector<Point> cap_sample(const SpherePoint& center, double angular_radius,
                              std::size_t count) {
  if (center.ambient_dimension() != 3) fail(ErrorKind::kRejectedInput, "cap_sample works on S^2");
  if (!(angular_radius >= 0.0) || angular_radius >= std::numbers::pi) {
    fail(ErrorKind::kRejectedInput, "cap radius must lie in [0, pi)");
  }
  const Matrix basis = tangent_basis(center.vec());
  std::vector<Point> pts(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double r = angular_radius * std::sqrt((k + 0.5) / static_cast<double>(count));
    const double phi = kGoldenAngle * static_cast<double>(k);
    const Vector v = r * (std::cos(phi) * basis.row(0) + std::sin(phi) * basis.row(1)).transpose();
    pts[k] = exp_map(center.vec(), v);
  }
  return pts;
}

double cut_locus_margin(const TransportPlan& plan, const std::vector<Point>& sources,
                        const std::vector<Point>& targets) {
  double margin = std::numbers::pi;
  for (const auto& e : plan.entries) {
    if (e.mass <= 0.0) continue;
    margin = std::min(margin, std::numbers::pi -
                                  geodesic_distance(sources.at(e.source), targets.at(e.target)));
  }
  return margin;
}

CapExampleReport run_cap_example(const CapExampleOptions& opt) {
  if (opt.resolution < 500) fail(ErrorKind::kRejectedInput, "cap example needs at least 500 points");
  if (!(opt.rho > 0.0)) fail(ErrorKind::kConfiguration, "rho must be positive");
  CapExampleReport rep;
  const SphericalCap lambda(SpherePoint::south(), opt.cap_height);
  const SphericalCap enlarged(SpherePoint::south(), opt.enlarged_height);
  const SphericalCap north(SpherePoint::north(), opt.north_height);

  rep.sources = fibonacci_sphere(opt.resolution);
  const double w = 4.0 * std::numbers::pi / static_cast<double>(opt.resolution);
  std::vector<double> f(rep.sources.size(), w);
  std::vector<double> g;
  double f_enlarged = 0.0;
  for (const auto& p : rep.sources) {
    if (lambda.contains(p)) {
      rep.targets.push_back(p);
      g.push_back((1.0 + opt.rho) * w);
      rep.f_on_cap += w;
    }
    if (enlarged.contains(p)) f_enlarged += w;
  }
  if (rep.targets.empty()) fail(ErrorKind::kConfiguration, "no lattice points fall in the target cap");
  rep.source_count = rep.sources.size();
  rep.target_count = rep.targets.size();
  rep.g_on_cap = (1.0 + opt.rho) * rep.f_on_cap;
  rep.enlarged_excess = f_enlarged - rep.g_on_cap;
  if (!(rep.enlarged_excess > 0.0)) {
    fail(ErrorKind::kConfiguration, "enlarged cap carries no more source mass than the target");
  }
  rep.mass = (1.0 + 0.5 * opt.rho) * rep.f_on_cap;

  const SphereCost cost;
  rep.plan = solve_partial(f, g, rep.mass, pairwise_costs(rep.sources, rep.targets, cost));
  rep.objective = rep.plan.objective;
  for (const auto& e : rep.plan.entries) {
    const double d = geodesic_distance(rep.sources[e.source], rep.targets[e.target]);
    rep.max_transport_distance = std::max(rep.max_transport_distance, d);
    if (d >= 15.0 / 8.0) ++rep.long_arcs;
    if (north.contains(rep.sources[e.source])) rep.north_active_mass += e.mass;
  }
  rep.cut_margin = cut_locus_margin(rep.plan, rep.sources, rep.targets);
  rep.north_inactive = rep.north_active_mass <= opt.mass_margin;

  const double cos_theta = 1.0 - opt.enlarged_height;
  rep.theta = std::acos(cos_theta);
  rep.tan_theta = std::sqrt(1.0 - cos_theta * cos_theta) / cos_theta;
  rep.chain_holds = 2.0 * rep.theta <= 8.0 / 7.0 && 8.0 / 7.0 < 15.0 / 8.0;

  // Active lattice points with an inactive point among their six nearest.
  const std::size_t n = rep.sources.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(rep.plan.left_marginal[i] > 0.0)) continue;
    std::vector<std::pair<double, std::size_t>> near;
    near.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) near.emplace_back(-rep.sources[i].dot(rep.sources[j]), j);
    }
    std::partial_sort(near.begin(), near.begin() + 6, near.end());
    bool edge = false;
    for (int k = 0; k < 6; ++k) edge = edge || !(rep.plan.left_marginal[near[k].second] > 0.0);
    if (!edge) continue;
    const Point& p = rep.sources[i];
    rep.boundary.push_back({i, std::acos(std::clamp(p[2], -1.0, 1.0)), std::atan2(p[1], p[0])});
  }
  return rep;
}

PredicateReport annulus_image_demo(const CapImageOptions& opt) {
  const Vector& base = opt.base.vec();
  if (base.size() != 3 || opt.cap.center.ambient_dimension() != 3) {
    fail(ErrorKind::kRejectedInput, "annulus_image_demo works on S^2");
  }
  std::vector<Point> pts;
  if (opt.cap.contains(-base)) {
    // Sample uniformly in the image: sunflower over the tangent disc of
    // radius pi - cut_margin, kept where exp lands in the cap.
    const Matrix basis = tangent_basis(base);
    const double outer = std::numbers::pi - opt.cut_margin;
    std::size_t total = opt.samples;
    for (int round = 0; round < 4; ++round) {
      pts.clear();
      for (std::size_t k = 0; k < total; ++k) {
        const double r = outer * std::sqrt((k + 0.5) / static_cast<double>(total));
        const double phi = kGoldenAngle * static_cast<double>(k);
        const Vector v = r * (std::cos(phi) * basis.row(0) + std::sin(phi) * basis.row(1)).transpose();
        const Point y = exp_map(base, v);
        if (opt.cap.contains(y)) pts.push_back(y);
      }
      if (pts.size() >= opt.samples || pts.empty()) break;
      total = static_cast<std::size_t>(std::ceil(1.02 * total * opt.samples / pts.size()));
    }
  } else {
    pts = cap_sample(opt.cap.center, opt.cap.angular_radius(), opt.samples);
  }

  PredicateReport report;
  if (pts.size() < 3) {
    report.name = "c_convexity";
    report.degenerate = true;
    report.samples_checked = pts.size();
    report.note = "cap image collapses inside the cut-locus margin";
    return report;
  }
  const SphereCost cost;
  std::vector<Vector> image(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) image[k] = cost.grad_x(base, pts[k]);
  report = check_midpoint_coverage(image);
  return report;
}

}  // namespace ptlab
