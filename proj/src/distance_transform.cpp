#include "ptlab/distance_transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptlab/error.hpp"

namespace ptlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One-dimensional transform of a sampled function f (values may be +inf).
void transform_line(std::vector<double>& f, std::vector<double>& d,
                    std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    while (k >= 0) {
      const double s = ((f[q] + q * static_cast<double>(q)) -
                        (f[v[k]] + v[k] * static_cast<double>(v[k]))) /
                       (2.0 * (q - v[k]));
      if (s <= z[k]) {
        --k;
      } else {
        break;
      }
    }
    ++k;
    v[k] = q;
    z[k] = k == 0 ? -kInf
                  : ((f[q] + q * static_cast<double>(q)) -
                     (f[v[k - 1]] + v[k - 1] * static_cast<double>(v[k - 1]))) /
                        (2.0 * (q - v[k - 1]));
    z[k + 1] = kInf;
  }
  if (k < 0) {
    std::fill(d.begin(), d.end(), kInf);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const double diff = q - v[j];
    d[q] = diff * diff + f[v[j]];
  }
}

std::vector<double> transform(const std::vector<int>& res, const CellMask& feature) {
  const int n = static_cast<int>(res.size());
  std::size_t count = 1;
  for (int r : res) count *= static_cast<std::size_t>(r);
  std::vector<double> dist(count);
  for (std::size_t i = 0; i < count; ++i) dist[i] = feature[i] ? 0.0 : kInf;

  std::vector<std::size_t> stride(n, 1);
  for (int a = n - 2; a >= 0; --a) stride[a] = stride[a + 1] * res[a + 1];

  for (int axis = 0; axis < n; ++axis) {
    const int len = res[axis];
    std::vector<double> f(len), d(len), z(len + 1);
    std::vector<int> v(len);
    for (std::size_t base = 0; base < count; ++base) {
      // Visit each line once, from its first cell.
      if ((base / stride[axis]) % len != 0) continue;
      for (int q = 0; q < len; ++q) f[q] = dist[base + q * stride[axis]];
      transform_line(f, d, v, z);
      for (int q = 0; q < len; ++q) dist[base + q * stride[axis]] = d[q];
    }
  }
  return dist;
}

}  // namespace

std::vector<double> squared_distance(const EvaluationGrid& grid, const CellMask& feature) {
  if (feature.size() != grid.cell_count()) {
    fail(ErrorKind::kRejectedInput, "mask size does not match the grid");
  }
  return transform(grid.resolution(), feature);
}

std::vector<double> signed_distance(const EvaluationGrid& grid, const CellMask& inside,
                                    bool outside_beyond_grid) {
  if (inside.size() != grid.cell_count()) {
    fail(ErrorKind::kRejectedInput, "mask size does not match the grid");
  }
  const int n = grid.dimension();
  std::vector<double> result(grid.cell_count());
  if (!outside_beyond_grid) {
    CellMask outside(inside.size());
    for (std::size_t i = 0; i < inside.size(); ++i) outside[i] = !inside[i];
    const auto to_out = transform(grid.resolution(), outside);
    const auto to_in = transform(grid.resolution(), inside);
    for (std::size_t i = 0; i < inside.size(); ++i) {
      result[i] = inside[i] ? std::sqrt(to_out[i]) : -std::sqrt(to_in[i]);
      result[i] *= grid.cell_size();
    }
    return result;
  }
  // Pad by one cell of outside on every side.
  std::vector<int> padded(n);
  for (int a = 0; a < n; ++a) padded[a] = grid.resolution()[a] + 2;
  std::size_t count = 1;
  for (int r : padded) count *= static_cast<std::size_t>(r);
  std::vector<std::size_t> stride(n, 1);
  for (int a = n - 2; a >= 0; --a) stride[a] = stride[a + 1] * padded[a + 1];
  CellMask in_p(count, 0), out_p(count, 1);
  std::vector<std::size_t> map(grid.cell_count());
  for (std::size_t i = 0; i < grid.cell_count(); ++i) {
    const auto c = grid.coords(i);
    std::size_t j = 0;
    for (int a = 0; a < n; ++a) j += stride[a] * static_cast<std::size_t>(c[a] + 1);
    map[i] = j;
    in_p[j] = inside[i];
    out_p[j] = !inside[i];
  }
  const auto to_out = transform(padded, out_p);
  const auto to_in = transform(padded, in_p);
  for (std::size_t i = 0; i < grid.cell_count(); ++i) {
    const std::size_t j = map[i];
    result[i] = (inside[i] ? std::sqrt(to_out[j]) : -std::sqrt(to_in[j])) * grid.cell_size();
  }
  return result;
}

}  // namespace ptlab
