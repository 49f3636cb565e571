#pragma once

#include <vector>

#include "ptlab/grid.hpp"

namespace ptlab {

// Exact squared Euclidean distance (in cells) from every cell centre to the
// nearest cell with feature[c] != 0, by separable lower envelopes of
// parabolas.  Cells are +inf when no feature exists.
std::vector<double> squared_distance(const EvaluationGrid& grid, const CellMask& feature);

// Signed distance in world units between cell centres: for an inside cell the
// distance to the nearest outside cell, negated for outside cells.  With
// outside_beyond_grid the ring of cells just past the grid counts as outside.
std::vector<double> signed_distance(const EvaluationGrid& grid, const CellMask& inside,
                                    bool outside_beyond_grid = false);

}  // namespace ptlab
