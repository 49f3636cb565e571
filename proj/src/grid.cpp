#include "ptlab/grid.hpp"

#include <algorithm>
#include <cmath>

#include "ptlab/error.hpp"

namespace ptlab {

EvaluationGrid::EvaluationGrid(Point lower, double h, std::vector<int> resolution)
    : lower_(std::move(lower)), h_(h), resolution_(std::move(resolution)) {
  if (resolution_.empty() || static_cast<long>(resolution_.size()) != lower_.size()) {
    fail(ErrorKind::kRejectedInput, "grid lower corner and resolution disagree in dimension");
  }
  if (!(h_ > 0.0) || !std::isfinite(h_)) fail(ErrorKind::kRejectedInput, "grid cell size must be positive");
  for (int r : resolution_) {
    if (r < 8) fail(ErrorKind::kRejectedInput, "grid resolution must be at least 8 per axis");
  }
  const int n = dimension();
  stride_.assign(n, 1);
  for (int a = n - 2; a >= 0; --a) stride_[a] = stride_[a + 1] * resolution_[a + 1];
  count_ = stride_[0] * resolution_[0];
}

EvaluationGrid EvaluationGrid::covering_box(const Point& lower, const Point& upper,
                                            int resolution, int margin_cells) {
  if (lower.size() != upper.size() || lower.size() == 0) {
    fail(ErrorKind::kRejectedInput, "grid box corners disagree in dimension");
  }
  if (margin_cells < 2) fail(ErrorKind::kRejectedInput, "grid margin must be at least 2 cells");
  if (resolution < 8) fail(ErrorKind::kRejectedInput, "grid resolution must be at least 8 per axis");
  const Vector extent = upper - lower;
  if ((extent.array() < 0.0).any()) fail(ErrorKind::kRejectedInput, "grid box is inverted");
  const double longest = extent.maxCoeff();
  // A degenerate box (single point) still gets a unit-sized grid.
  const double h = (longest > 0.0 ? longest : 1.0) / (resolution - 2 * margin_cells);
  if (!(h > 0.0)) fail(ErrorKind::kRejectedInput, "grid resolution too small for the margin");
  const int n = static_cast<int>(lower.size());
  std::vector<int> res(n);
  Point lo(n);
  for (int a = 0; a < n; ++a) {
    const int inner = std::max(1, static_cast<int>(std::ceil(extent[a] / h - 1e-9)));
    res[a] = std::max(8, inner + 2 * margin_cells);
    const double span = res[a] * h;
    lo[a] = lower[a] - 0.5 * (span - extent[a]);
  }
  return EvaluationGrid(lo, h, res);
}

EvaluationGrid EvaluationGrid::covering(const std::vector<Point>& points, int resolution,
                                        int margin_cells) {
  if (points.empty()) fail(ErrorKind::kRejectedInput, "cannot cover an empty point set");
  Point lo = points.front();
  Point hi = points.front();
  for (const auto& p : points) {
    if (p.size() != lo.size()) fail(ErrorKind::kRejectedInput, "points disagree in dimension");
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return covering_box(lo, hi, resolution, margin_cells);
}

Point EvaluationGrid::upper() const {
  Point up = lower_;
  for (int a = 0; a < dimension(); ++a) up[a] += h_ * resolution_[a];
  return up;
}

std::vector<int> EvaluationGrid::coords(std::size_t cell) const {
  std::vector<int> c(dimension());
  for (int a = 0; a < dimension(); ++a) {
    c[a] = static_cast<int>(cell / stride_[a]);
    cell %= stride_[a];
  }
  return c;
}

std::size_t EvaluationGrid::index(const std::vector<int>& c) const {
  std::size_t idx = 0;
  for (int a = 0; a < dimension(); ++a) idx += stride_[a] * static_cast<std::size_t>(c[a]);
  return idx;
}

bool EvaluationGrid::in_range(const std::vector<int>& c) const {
  for (int a = 0; a < dimension(); ++a) {
    if (c[a] < 0 || c[a] >= resolution_[a]) return false;
  }
  return true;
}

Point EvaluationGrid::center(std::size_t cell) const {
  const auto c = coords(cell);
  Point p(dimension());
  for (int a = 0; a < dimension(); ++a) p[a] = lower_[a] + (c[a] + 0.5) * h_;
  return p;
}

std::optional<std::size_t> EvaluationGrid::locate(const Point& p) const {
  if (p.size() != lower_.size()) fail(ErrorKind::kRejectedInput, "point/grid dimension mismatch");
  std::vector<int> c(dimension());
  for (int a = 0; a < dimension(); ++a) {
    const double t = (p[a] - lower_[a]) / h_;
    if (!(t >= 0.0) || t > resolution_[a]) return std::nullopt;
    c[a] = std::min(resolution_[a] - 1, static_cast<int>(std::floor(t)));
  }
  return index(c);
}

std::vector<std::size_t> EvaluationGrid::neighbors(std::size_t cell) const {
  std::vector<std::size_t> out;
  const auto c = coords(cell);
  for (int a = 0; a < dimension(); ++a) {
    if (c[a] > 0) out.push_back(cell - stride_[a]);
    if (c[a] + 1 < resolution_[a]) out.push_back(cell + stride_[a]);
  }
  return out;
}

bool EvaluationGrid::on_edge(std::size_t cell) const {
  const auto c = coords(cell);
  for (int a = 0; a < dimension(); ++a) {
    if (c[a] == 0 || c[a] + 1 == resolution_[a]) return true;
  }
  return false;
}

}  // namespace ptlab
