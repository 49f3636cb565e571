#include "ptlab/finite_difference.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ptlab/error.hpp"

namespace ptlab {

namespace {

void check_pair(const Point& x, const Point& y) {
  if (x.size() != y.size() || x.size() == 0) {
    fail(ErrorKind::kRejectedInput, "cost arguments must share a positive dimension");
  }
}

}  // namespace

void CostModel::require_order(int order, const char* what) const {
  if (order > smoothness_order()) {
    fail(ErrorKind::kCapability,
         std::string(what) + " needs derivative order " + std::to_string(order) +
             " but cost '" + id() + "' provides " +
             std::to_string(smoothness_order()));
  }
}

Vector CostModel::grad_x(const Point& x, const Point& y) const {
  require_order(1, "grad_x");
  return fd::grad_x(*this, x, y, steps_.low_order);
}
Vector CostModel::grad_y(const Point& x, const Point& y) const {
  require_order(1, "grad_y");
  return fd::grad_y(*this, x, y, steps_.low_order);
}
Matrix CostModel::hess_xx(const Point& x, const Point& y) const {
  require_order(2, "hess_xx");
  return fd::hess_xx(*this, x, y, steps_.low_order);
}
Matrix CostModel::hess_xy(const Point& x, const Point& y) const {
  require_order(2, "hess_xy");
  return fd::hess_xy(*this, x, y, steps_.low_order);
}
Tensor3 CostModel::d3_xxy(const Point& x, const Point& y) const {
  require_order(3, "d3_xxy");
  return fd::d3_xxy(*this, x, y, steps_.high_order);
}
Tensor3 CostModel::d3_xyy(const Point& x, const Point& y) const {
  require_order(3, "d3_xyy");
  return fd::d3_xyy(*this, x, y, steps_.high_order);
}
Tensor4 CostModel::d4_xxyy(const Point& x, const Point& y) const {
  require_order(4, "d4_xxyy");
  return fd::d4_xxyy(*this, x, y, steps_.high_order);
}

namespace fd {

double mixed_partial(const CostModel& cost, const Point& x, const Point& y,
                     std::span<const Axis> axes, double h) {
  check_pair(x, y);
  const std::size_t k = axes.size();
  const std::size_t corners = std::size_t{1} << k;
  double acc = 0.0;
  Point xs(x.size());
  Point ys(y.size());
  for (std::size_t mask = 0; mask < corners; ++mask) {
    xs = x;
    ys = y;
    double sign = 1.0;
    for (std::size_t l = 0; l < k; ++l) {
      const double s = (mask >> l) & 1U ? -1.0 : 1.0;
      sign *= s;
      if (axes[l].in_y) {
        ys[axes[l].index] += s * h;
      } else {
        xs[axes[l].index] += s * h;
      }
    }
    acc += sign * cost.value(xs, ys);
  }
  return acc / std::pow(2.0 * h, static_cast<double>(k));
}

Vector grad_x(const CostModel& cost, const Point& x, const Point& y, double h) {
  const int n = static_cast<int>(x.size());
  Vector g(n);
  for (int i = 0; i < n; ++i) {
    const std::array<Axis, 1> a{Axis{false, i}};
    g[i] = mixed_partial(cost, x, y, a, h);
  }
  return g;
}

Vector grad_y(const CostModel& cost, const Point& x, const Point& y, double h) {
  const int n = static_cast<int>(x.size());
  Vector g(n);
  for (int i = 0; i < n; ++i) {
    const std::array<Axis, 1> a{Axis{true, i}};
    g[i] = mixed_partial(cost, x, y, a, h);
  }
  return g;
}

Matrix hess_xx(const CostModel& cost, const Point& x, const Point& y, double h) {
  const int n = static_cast<int>(x.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const std::array<Axis, 2> a{Axis{false, i}, Axis{false, j}};
      m(i, j) = m(j, i) = mixed_partial(cost, x, y, a, h);
    }
  }
  return m;
}

Matrix hess_xy(const CostModel& cost, const Point& x, const Point& y, double h) {
  const int n = static_cast<int>(x.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::array<Axis, 2> a{Axis{false, i}, Axis{true, j}};
      m(i, j) = mixed_partial(cost, x, y, a, h);
    }
  }
  return m;
}

Tensor3 d3_xxy(const CostModel& cost, const Point& x, const Point& y, double h) {
  const int n = static_cast<int>(x.size());
  Tensor3 t(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int m = 0; m < n; ++m) {
        const std::array<Axis, 3> a{Axis{false, i}, Axis{false, j}, Axis{true, m}};
        t(i, j, m) = t(j, i, m) = mixed_partial(cost, x, y, a, h);
      }
    }
  }
  return t;
}

Tensor3 d3_xyy(const CostModel& cost, const Point& x, const Point& y, double h) {
  const int n = static_cast<int>(x.size());
  Tensor3 t(n);
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < n; ++r) {
      for (int s = r; s < n; ++s) {
        const std::array<Axis, 3> a{Axis{false, i}, Axis{true, r}, Axis{true, s}};
        t(i, r, s) = t(i, s, r) = mixed_partial(cost, x, y, a, h);
      }
    }
  }
  return t;
}

Tensor4 d4_xxyy(const CostModel& cost, const Point& x, const Point& y, double h) {
  const int n = static_cast<int>(x.size());
  Tensor4 t(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      for (int r = 0; r < n; ++r) {
        for (int s = r; s < n; ++s) {
          const std::array<Axis, 4> a{Axis{false, i}, Axis{false, j},
                                      Axis{true, r}, Axis{true, s}};
          const double v = mixed_partial(cost, x, y, a, h);
          t(i, j, r, s) = t(j, i, r, s) = t(i, j, s, r) = t(j, i, s, r) = v;
        }
      }
    }
  }
  return t;
}

namespace {

double mismatch(std::span<const double> coarse, std::span<const double> fine) {
  double worst = 0.0;
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    worst = std::max(worst, std::abs(coarse[k] - fine[k]) /
                                std::max(std::abs(fine[k]), 1.0));
  }
  return worst;
}

std::span<const double> view(const Eigen::MatrixXd& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

}  // namespace

QualityReport derivative_quality(const CostModel& cost, const Point& x,
                                 const Point& y, double threshold) {
  QualityReport report;
  const FdSteps steps = cost.fd_steps();
  const int order = cost.smoothness_order();
  auto note = [&](double value, int ord) {
    if (value > report.max_mismatch) {
      report.max_mismatch = value;
      report.worst_order = ord;
    }
  };
  const double lo = steps.low_order;
  const double hi = steps.high_order;
  if (order >= 1) {
    note(mismatch(view(grad_x(cost, x, y, lo)), view(grad_x(cost, x, y, lo / 2))), 1);
  }
  if (order >= 2) {
    note(mismatch(view(hess_xx(cost, x, y, lo)), view(hess_xx(cost, x, y, lo / 2))), 2);
    note(mismatch(view(hess_xy(cost, x, y, lo)), view(hess_xy(cost, x, y, lo / 2))), 2);
  }
  if (order >= 3) {
    note(mismatch(d3_xxy(cost, x, y, hi).data(), d3_xxy(cost, x, y, hi / 2).data()), 3);
    note(mismatch(d3_xyy(cost, x, y, hi).data(), d3_xyy(cost, x, y, hi / 2).data()), 3);
  }
  if (order >= 4) {
    note(mismatch(d4_xxyy(cost, x, y, hi).data(), d4_xxyy(cost, x, y, hi / 2).data()), 4);
  }
  report.warning = report.max_mismatch > threshold;
  return report;
}

}  // namespace fd
}  // namespace ptlab
