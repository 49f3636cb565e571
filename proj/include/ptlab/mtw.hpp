#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ptlab/cost_model.hpp"

namespace ptlab {

// Ma-Trudinger-Wang tensor
//   A_{ij,kl} = c^{r,k} c^{s,l} (c^{m,n} c_{ij,m} c_{n,rs} - c_{ij,rs})
// evaluated at (x, y); the momentum p is implicit through p = grad_x c(x, y).
struct MtwTensor {
  Tensor4 entries;
  Point x;
  Point y;

  int dim() const { return entries.dim(); }
};

MtwTensor mtw_tensor(const CostModel& cost, const Point& x, const Point& y);

// A_{ij,kl} xi_i xi_j eta_k eta_l / (|xi|^2 |eta|^2).
double mtw_form(const MtwTensor& tensor, const Vector& xi, const Vector& eta);

struct DirectionPair {
  Vector xi;
  Vector eta;
};

// count low-discrepancy orthonormal pairs (Gram-Schmidt of eta against xi),
// followed by every ordered axis pair (e_i, e_j), i != j.  The first k
// sampled pairs do not depend on count, so larger counts extend smaller ones.
std::vector<DirectionPair> direction_pairs(int n, int count, std::uint64_t seed = 0);

struct A3Report {
  // Sampled minimum of the normalised form: an upper bound on the true
  // infimum, never a certificate of positivity.
  double c0_estimate = 0.0;
  bool defined = false;
  Point argmin_x;
  Point argmin_y;
  Vector argmin_xi;
  Vector argmin_eta;
  std::size_t samples_checked = 0;
  std::string label = "upper bound on inf";
};

A3Report a3_infimum(const CostModel& cost,
                    const std::vector<std::pair<Point, Point>>& pairs,
                    int directions_per_pair, std::uint64_t seed = 0);

}  // namespace ptlab
