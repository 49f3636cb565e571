#include "ptlab/simplex.hpp"

#include <cmath>
#include <limits>

#include "ptlab/error.hpp"

namespace ptlab {

namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, double tol)
      : nvar_(static_cast<int>(lp.c.size())),
        nub_(static_cast<int>(lp.b_ub.size())),
        neq_(static_cast<int>(lp.b_eq.size())),
        rows_(nub_ + neq_),
        cols_(nvar_ + nub_ + neq_),
        tol_(tol),
        t_(Matrix::Zero(rows_, cols_ + 1)),
        basis_(rows_) {
    for (int r = 0; r < nub_; ++r) {
      t_.row(r).head(nvar_) = lp.a_ub.row(r);
      t_(r, nvar_ + r) = 1.0;
      t_(r, cols_) = lp.b_ub[r];
      basis_[r] = nvar_ + r;
    }
    for (int k = 0; k < neq_; ++k) {
      const int r = nub_ + k;
      t_.row(r).head(nvar_) = lp.a_eq.row(k);
      t_(r, nvar_ + nub_ + k) = 1.0;
      t_(r, cols_) = lp.b_eq[k];
      basis_[r] = nvar_ + nub_ + k;
    }
    for (int r = 0; r < rows_; ++r) {
      if (t_(r, cols_) < 0.0) {
        fail(ErrorKind::kRejectedInput, "solve_lp expects non-negative right-hand sides");
      }
    }
  }

  bool is_artificial(int col) const { return col >= nvar_ + nub_; }

  // Runs simplex iterations for cost vector `cost` (length cols_).  Returns
  // false when unbounded.
  bool optimise(const Vector& cost, bool allow_artificial) {
    cost_ = cost;
    while (true) {
      const Vector rc = reduced_costs();
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (!allow_artificial && is_artificial(j)) continue;
        if (rc[j] < -tol_) {
          enter = j;  // Bland: lowest index
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < rows_; ++r) {
        const double a = t_(r, enter);
        if (a > tol_) {
          const double ratio = t_(r, cols_) / a;
          if (leave < 0 || ratio < best - tol_ ||
              (std::abs(ratio - best) <= tol_ && basis_[r] < basis_[leave])) {
            best = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  // Moves zero-level artificials out of the basis where a real column can
  // replace them.
  void drive_out_artificials() {
    for (int r = 0; r < rows_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      for (int j = 0; j < nvar_ + nub_; ++j) {
        if (std::abs(t_(r, j)) > 1e-9) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  Vector reduced_costs() const {
    Vector rc = cost_;
    for (int r = 0; r < rows_; ++r) {
      const double cb = cost_[basis_[r]];
      if (cb != 0.0) rc -= cb * t_.row(r).head(cols_).transpose();
    }
    return rc;
  }

  double rhs(int r) const { return t_(r, cols_); }
  int basis(int r) const { return basis_[r]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int k = 0; k < rows_; ++k) {
      if (k != r && t_(k, c) != 0.0) t_.row(k) -= t_(k, c) * t_.row(r);
    }
    basis_[r] = c;
  }

  int nvar_, nub_, neq_, rows_, cols_;
  double tol_;
  Matrix t_;
  std::vector<int> basis_;
  Vector cost_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, double tolerance) {
  const int nvar = static_cast<int>(lp.c.size());
  const int nub = static_cast<int>(lp.b_ub.size());
  const int neq = static_cast<int>(lp.b_eq.size());
  Tableau tab(lp, tolerance);

  LpSolution sol;
  Vector phase1 = Vector::Zero(tab.cols());
  phase1.tail(neq).setOnes();
  tab.optimise(phase1, true);
  double infeasibility = 0.0;
  for (int r = 0; r < tab.rows(); ++r) {
    if (tab.basis(r) >= nvar + nub) infeasibility += tab.rhs(r);
  }
  if (infeasibility > 1e-9) return sol;
  sol.feasible = true;
  tab.drive_out_artificials();

  Vector phase2 = Vector::Zero(tab.cols());
  phase2.head(nvar) = lp.c;
  if (!tab.optimise(phase2, false)) {
    sol.bounded = false;
    return sol;
  }
  sol.x = Vector::Zero(nvar);
  for (int r = 0; r < tab.rows(); ++r) {
    if (tab.basis(r) < nvar) sol.x[tab.basis(r)] = tab.rhs(r);
  }
  sol.objective = lp.c.dot(sol.x);
  const Vector rc = tab.reduced_costs();
  sol.dual_ub = -rc.segment(nvar, nub);
  sol.dual_eq = -rc.segment(nvar + nub, neq);
  return sol;
}

}  // namespace ptlab
