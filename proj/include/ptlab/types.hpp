#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace ptlab {

using Point = Eigen::VectorXd;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Dense cubic/quartic arrays over a common extent n, row-major.
template <int Rank>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(int n) : n_(n), data_(extent(n), 0.0) {}

  int dim() const { return n_; }
  std::size_t size() const { return data_.size(); }

  template <typename... I>
  double& operator()(I... idx) {
    static_assert(sizeof...(I) == Rank);
    return data_[offset(idx...)];
  }
  template <typename... I>
  double operator()(I... idx) const {
    static_assert(sizeof...(I) == Rank);
    return data_[offset(idx...)];
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  static std::size_t extent(int n) {
    std::size_t e = 1;
    for (int r = 0; r < Rank; ++r) e *= static_cast<std::size_t>(n);
    return e;
  }
  template <typename... I>
  std::size_t offset(I... idx) const {
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx)), ...);
    return off;
  }

  int n_ = 0;
  std::vector<double> data_;
};

using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;

enum class SampleRole { kSource, kTarget };

// Finite point sample standing in for a continuum domain.
struct DomainSample {
  std::vector<Point> points;
  SampleRole role = SampleRole::kSource;

  int dimension() const {
    return points.empty() ? 0 : static_cast<int>(points.front().size());
  }
  Point lower() const;
  Point upper() const;
};

}  // namespace ptlab
