#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ptlab/types.hpp"

namespace ptlab {

using CellMask = std::vector<std::uint8_t>;

// Regular grid of cubic cells with side h.  Cells are addressed by a flat
// row-major index (axis 0 slowest) or by their integer coordinates.
class EvaluationGrid {
 public:
  EvaluationGrid() = default;
  // Requires at least 8 cells per axis and h > 0.
  EvaluationGrid(Point lower, double h, std::vector<int> resolution);

  // Grid over the bounding box of points (or of [lower, upper] when given),
  // `resolution` cells along the longest axis, plus margin_cells of padding
  // on every side.  margin_cells must be at least 2.
  static EvaluationGrid covering(const std::vector<Point>& points, int resolution,
                                 int margin_cells = 2);
  static EvaluationGrid covering_box(const Point& lower, const Point& upper,
                                     int resolution, int margin_cells = 2);

  int dimension() const { return static_cast<int>(resolution_.size()); }
  double cell_size() const { return h_; }
  const Point& lower() const { return lower_; }
  Point upper() const;
  const std::vector<int>& resolution() const { return resolution_; }
  std::size_t cell_count() const { return count_; }

  std::vector<int> coords(std::size_t cell) const;
  std::size_t index(const std::vector<int>& coords) const;
  bool in_range(const std::vector<int>& coords) const;
  Point center(std::size_t cell) const;

  // Cell whose closed box contains p, if any.
  std::optional<std::size_t> locate(const Point& p) const;
  bool contains(const Point& p) const { return locate(p).has_value(); }

  // Face neighbours (2n at most).
  std::vector<std::size_t> neighbors(std::size_t cell) const;
  bool on_edge(std::size_t cell) const;

 private:
  Point lower_;
  double h_ = 0.0;
  std::vector<int> resolution_;
  std::vector<std::size_t> stride_;
  std::size_t count_ = 0;
};

}  // namespace ptlab
