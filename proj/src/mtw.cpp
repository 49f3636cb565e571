#include "ptlab/mtw.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include <Eigen/LU>

#include "ptlab/error.hpp"

namespace ptlab {

MtwTensor mtw_tensor(const CostModel& cost, const Point& x, const Point& y) {
  cost.require_order(4, "mtw_tensor");
  if (x.size() != y.size() || x.size() == 0) {
    fail(ErrorKind::kRejectedInput, "mtw_tensor: mismatched basepoint dimensions");
  }
  const int n = static_cast<int>(x.size());
  const Matrix mixed = cost.hess_xy(x, y);
  const double det = mixed.determinant();
  if (!(std::abs(det) > 1e-10)) {
    fail(ErrorKind::kNonDegeneracy, "mixed Hessian is singular at the basepoint");
  }
  const Matrix inv = mixed.inverse();
  const Tensor3 cxxy = cost.d3_xxy(x, y);
  const Tensor3 cxyy = cost.d3_xyy(x, y);
  const Tensor4 cxxyy = cost.d4_xxyy(x, y);

  // B_{ij,rs} = c^{m,n} c_{ij,m} c_{n,rs} - c_{ij,rs}
  Tensor4 b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
          double acc = 0.0;
          for (int m = 0; m < n; ++m) {
            for (int q = 0; q < n; ++q) {
              acc += inv(m, q) * cxxy(i, j, m) * cxyy(q, r, s);
            }
          }
          b(i, j, r, s) = acc - cxxyy(i, j, r, s);
        }
      }
    }
  }

  MtwTensor out{Tensor4(n), x, y};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int r = 0; r < n; ++r) {
            for (int s = 0; s < n; ++s) {
              acc += inv(r, k) * inv(s, l) * b(i, j, r, s);
            }
          }
          out.entries(i, j, k, l) = acc;
        }
      }
    }
  }
  return out;
}

double mtw_form(const MtwTensor& tensor, const Vector& xi, const Vector& eta) {
  const int n = tensor.dim();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double xx = xi[i] * xi[j];
      if (xx == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          acc += tensor.entries(i, j, k, l) * xx * eta[k] * eta[l];
        }
      }
    }
  }
  return acc / (xi.squaredNorm() * eta.squaredNorm());
}

namespace {

// Additive recurrence with the generalised golden ratio (R_d sequence).
class KroneckerSequence {
 public:
  explicit KroneckerSequence(int dims) : alpha_(dims) {
    double g = 2.0;
    for (int it = 0; it < 64; ++it) g = std::pow(1.0 + g, 1.0 / (dims + 1));
    double p = 1.0;
    for (int d = 0; d < dims; ++d) {
      p /= g;
      alpha_[d] = p;
    }
  }

  std::vector<double> at(std::uint64_t index) const {
    std::vector<double> u(alpha_.size());
    for (std::size_t d = 0; d < alpha_.size(); ++d) {
      const double v = 0.5 + alpha_[d] * static_cast<double>(index);
      u[d] = v - std::floor(v);
    }
    return u;
  }

 private:
  std::vector<double> alpha_;
};

Vector gaussian_direction(const std::vector<double>& u, int offset, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    const double u1 = 1.0 - u[offset + 2 * i];
    const double u2 = u[offset + 2 * i + 1];
    v[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  return v;
}

}  // namespace

std::vector<DirectionPair> direction_pairs(int n, int count, std::uint64_t seed) {
  if (n < 2) {
    fail(ErrorKind::kDegenerate, "no orthogonal direction pair exists in dimension 1");
  }
  std::vector<DirectionPair> out;
  out.reserve(static_cast<std::size_t>(count + n * (n - 1)));
  if (n == 2) {
    // Golden-ratio angle sequence on the circle; eta is the rotation of xi.
    const double step = 2.0 * std::numbers::pi / std::numbers::phi;
    for (int k = 0; k < count; ++k) {
      const double t = step * static_cast<double>(seed + k);
      Vector xi(2), eta(2);
      xi << std::cos(t), std::sin(t);
      eta << -xi[1], xi[0];
      out.push_back({xi, eta});
    }
  } else {
    const KroneckerSequence seq(4 * n);
    std::uint64_t index = seed;
    while (static_cast<int>(out.size()) < count) {
      const auto u = seq.at(index++);
      Vector xi = gaussian_direction(u, 0, n);
      Vector eta = gaussian_direction(u, 2 * n, n);
      if (xi.norm() < 1e-8) continue;
      xi.normalize();
      eta -= eta.dot(xi) * xi;
      if (eta.norm() < 1e-8) continue;
      eta.normalize();
      eta -= eta.dot(xi) * xi;  // second pass keeps |<xi, eta>| at round-off
      eta.normalize();
      out.push_back({xi, eta});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      out.push_back({Vector::Unit(n, i), Vector::Unit(n, j)});
    }
  }
  return out;
}

A3Report a3_infimum(const CostModel& cost,
                    const std::vector<std::pair<Point, Point>>& pairs,
                    int directions_per_pair, std::uint64_t seed) {
  A3Report report;
  if (pairs.empty()) {
    report.c0_estimate = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  const int n = static_cast<int>(pairs.front().first.size());
  if (n < 2) {
    fail(ErrorKind::kDegenerate, "A3 form needs dimension >= 2");
  }
  cost.require_order(4, "a3_infimum");
  const auto dirs = direction_pairs(n, directions_per_pair, seed);

  struct Local {
    double value = std::numeric_limits<double>::infinity();
    std::size_t dir = 0;
  };
  std::vector<Local> local(pairs.size());
  const auto count = static_cast<long>(pairs.size());
  // Exceptions cannot cross the parallel region; record and rethrow.
  std::vector<std::exception_ptr> errors(pairs.size());
#pragma omp parallel for schedule(dynamic)
  for (long p = 0; p < count; ++p) {
    try {
      const MtwTensor t = mtw_tensor(cost, pairs[p].first, pairs[p].second);
      for (std::size_t d = 0; d < dirs.size(); ++d) {
        const double v = mtw_form(t, dirs[d].xi, dirs[d].eta);
        if (v < local[p].value) local[p] = {v, d};
      }
    } catch (...) {
      errors[p] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::size_t best = 0;
  for (std::size_t p = 1; p < local.size(); ++p) {
    if (local[p].value < local[best].value) best = p;
  }
  report.defined = true;
  report.c0_estimate = local[best].value;
  report.argmin_x = pairs[best].first;
  report.argmin_y = pairs[best].second;
  report.argmin_xi = dirs[local[best].dir].xi;
  report.argmin_eta = dirs[local[best].dir].eta;
  report.samples_checked = pairs.size() * dirs.size();
  return report;
}

}  // namespace ptlab
