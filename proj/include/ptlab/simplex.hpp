#pragma once

#include <vector>

#include "ptlab/types.hpp"

namespace ptlab {

// Dense two-phase primal simplex with Bland's rule for small problems:
//   minimise c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0,
// with b_ub >= 0 and b_eq >= 0.
struct LinearProgram {
  Vector c;
  Matrix a_ub;
  Vector b_ub;
  Matrix a_eq;
  Vector b_eq;
};

struct LpSolution {
  bool feasible = false;
  bool bounded = true;
  Vector x;
  double objective = 0.0;
  Vector dual_ub;  // <= 0 at optimum
  Vector dual_eq;
};

LpSolution solve_lp(const LinearProgram& lp, double tolerance = 1e-11);

}  // namespace ptlab
