#include "ptlab/costs.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "ptlab/error.hpp"
#include "ptlab/finite_difference.hpp"
#include "ptlab/sphere.hpp"

namespace ptlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kRejectedInput: return "rejected input";
    case ErrorKind::kCapability: return "capability";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kNonDegeneracy: return "non-degeneracy";
    case ErrorKind::kDegenerateGradient: return "degenerate gradient";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kCutLocus: return "cut locus";
    case ErrorKind::kConfiguration: return "configuration";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kInternal: return "internal";
  }
  return "unknown";
}

Point DomainSample::lower() const {
  Point lo = points.front();
  for (const auto& p : points) lo = lo.cwiseMin(p);
  return lo;
}

Point DomainSample::upper() const {
  Point hi = points.front();
  for (const auto& p : points) hi = hi.cwiseMax(p);
  return hi;
}

// ---------------------------------------------------------------------------
// RadialCost: derivatives of F(u) = h(u.u), u = x - y.

double RadialCost::clamp_s(double s) const {
  return std::max(s, floor_ * floor_);
}

double RadialCost::value(const Point& x, const Point& y) const {
  const Point u = x - y;
  return profile(clamp_s(u.squaredNorm()))[0];
}

Vector RadialCost::d1(const Point& u) const {
  const auto h = profile(clamp_s(u.squaredNorm()));
  return 2.0 * h[1] * u;
}

Matrix RadialCost::d2(const Point& u) const {
  const auto h = profile(clamp_s(u.squaredNorm()));
  Matrix m = 4.0 * h[2] * (u * u.transpose());
  m.diagonal().array() += 2.0 * h[1];
  return m;
}

Tensor3 RadialCost::d3(const Point& u) const {
  const auto h = profile(clamp_s(u.squaredNorm()));
  const int n = static_cast<int>(u.size());
  Tensor3 t(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double v = 8.0 * h[3] * u[i] * u[j] * u[k];
        if (i == k) v += 4.0 * h[2] * u[j];
        if (j == k) v += 4.0 * h[2] * u[i];
        if (i == j) v += 4.0 * h[2] * u[k];
        t(i, j, k) = v;
      }
    }
  }
  return t;
}

Tensor4 RadialCost::d4(const Point& u) const {
  const auto h = profile(clamp_s(u.squaredNorm()));
  const int n = static_cast<int>(u.size());
  Tensor4 t(n);
  auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double v = 16.0 * h[4] * u[i] * u[j] * u[k] * u[l];
          v += 8.0 * h[3] *
               (d(i, l) * u[j] * u[k] + d(j, l) * u[i] * u[k] +
                d(k, l) * u[i] * u[j] + d(i, j) * u[k] * u[l] +
                d(i, k) * u[j] * u[l] + d(j, k) * u[i] * u[l]);
          v += 4.0 * h[2] *
               (d(i, k) * d(j, l) + d(j, k) * d(i, l) + d(i, j) * d(k, l));
          t(i, j, k, l) = v;
        }
      }
    }
  }
  return t;
}

Vector RadialCost::grad_x(const Point& x, const Point& y) const {
  require_order(1, "grad_x");
  return d1(x - y);
}

Vector RadialCost::grad_y(const Point& x, const Point& y) const {
  require_order(1, "grad_y");
  return -d1(x - y);
}

Matrix RadialCost::hess_xx(const Point& x, const Point& y) const {
  require_order(2, "hess_xx");
  return d2(x - y);
}

Matrix RadialCost::hess_xy(const Point& x, const Point& y) const {
  require_order(2, "hess_xy");
  return -d2(x - y);
}

Tensor3 RadialCost::d3_xxy(const Point& x, const Point& y) const {
  require_order(3, "d3_xxy");
  Tensor3 t = d3(x - y);
  for (double& v : t.data()) v = -v;
  return t;
}

Tensor3 RadialCost::d3_xyy(const Point& x, const Point& y) const {
  require_order(3, "d3_xyy");
  return d3(x - y);
}

Tensor4 RadialCost::d4_xxyy(const Point& x, const Point& y) const {
  require_order(4, "d4_xxyy");
  return d4(x - y);
}

std::array<double, 5> QuadraticCost::profile(double s) const {
  return {0.5 * s, 0.5, 0.0, 0.0, 0.0};
}

std::array<double, 5> LogCost::profile(double s) const {
  // -log|u| = -log(s)/2
  return {-0.5 * std::log(s), -0.5 / s, 0.5 / (s * s), -1.0 / (s * s * s),
          3.0 / (s * s * s * s)};
}

std::array<double, 5> SqrtPlusCost::profile(double s) const {
  const double q = 1.0 + s;
  const double r = std::sqrt(q);
  return {r, 0.5 / r, -0.25 / (q * r), 0.375 / (q * q * r),
          -0.9375 / (q * q * q * r)};
}

FiniteDifferenceCost::FiniteDifferenceCost(std::shared_ptr<const CostModel> inner,
                                           FdSteps steps)
    : inner_(std::move(inner)) {
  set_fd_steps(steps);
}

FunctionCost::FunctionCost(std::string id, int order, Evaluator eval, int dimension)
    : id_(std::move(id)), order_(order), eval_(std::move(eval)), dim_(dimension) {
  if (order_ < 0 || order_ > 4) {
    fail(ErrorKind::kRejectedInput, "smoothness order must lie in [0, 4]");
  }
}

// ---------------------------------------------------------------------------

namespace {
std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

CostRegistry::CostRegistry() {
  factories_["quadratic"] = [] { return std::make_shared<QuadraticCost>(); };
  factories_["log"] = [] { return std::make_shared<LogCost>(); };
  factories_["sqrtplus"] = [] { return std::make_shared<SqrtPlusCost>(); };
  factories_["sphere"] = [] { return std::make_shared<SphereCost>(); };
}

CostRegistry& CostRegistry::instance() {
  static CostRegistry registry;
  return registry;
}

void CostRegistry::add(const std::string& id, Factory factory) {
  std::lock_guard lock(registry_mutex());
  factories_[id] = std::move(factory);
}

bool CostRegistry::contains(const std::string& id) const {
  std::lock_guard lock(registry_mutex());
  return factories_.count(id) > 0;
}

std::vector<std::string> CostRegistry::ids() const {
  std::lock_guard lock(registry_mutex());
  std::vector<std::string> out;
  for (const auto& [id, f] : factories_) out.push_back(id);
  return out;
}

std::shared_ptr<const CostModel> CostRegistry::make(const std::string& id) const {
  Factory factory;
  {
    std::lock_guard lock(registry_mutex());
    auto it = factories_.find(id);
    if (it != factories_.end()) factory = it->second;
  }
  if (!factory) {
    std::ostringstream msg;
    msg << "unknown cost id '" << id << "'; registered ids:";
    for (const auto& known : ids()) msg << ' ' << known;
    fail(ErrorKind::kRejectedInput, msg.str());
  }
  return factory();
}

}  // namespace ptlab
