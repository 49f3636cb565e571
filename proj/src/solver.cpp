#include "ptlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "ptlab/error.hpp"
#include "ptlab/simplex.hpp"

namespace ptlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sum(const std::vector<double>& w) {
  return std::accumulate(w.begin(), w.end(), 0.0);
}

void check_weights(const std::vector<double>& w, const char* name) {
  if (w.empty()) fail(ErrorKind::kRejectedInput, std::string(name) + " is empty");
  for (double v : w) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(ErrorKind::kRejectedInput, std::string(name) + " has a non-positive weight");
    }
  }
}

void check_problem(const std::vector<double>& f, const std::vector<double>& g,
                   double m, const Matrix& costs) {
  check_weights(f, "source measure");
  check_weights(g, "target measure");
  if (costs.rows() != static_cast<long>(f.size()) ||
      costs.cols() != static_cast<long>(g.size())) {
    fail(ErrorKind::kRejectedInput, "cost matrix shape does not match the measures");
  }
  if (!costs.allFinite()) fail(ErrorKind::kRejectedInput, "cost matrix has non-finite entries");
  const double cap = std::min(sum(f), sum(g));
  if (!(m > 0.0) || m > cap + 1e-12) {
    fail(ErrorKind::kDomain, "transported mass must satisfy 0 < m <= min(|f|, |g|)");
  }
}

TransportPlan assemble(const Matrix& flow, const Matrix& costs, double threshold) {
  const long n = costs.rows();
  const long k = costs.cols();
  TransportPlan plan;
  plan.left_marginal.assign(n, 0.0);
  plan.right_marginal.assign(k, 0.0);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < k; ++j) {
      const double mass = flow(i, j);
      if (mass <= threshold) continue;
      plan.entries.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), mass});
      plan.objective += costs(i, j) * mass;
      plan.mass += mass;
      plan.left_marginal[i] += mass;
      plan.right_marginal[j] += mass;
    }
  }
  return plan;
}

// Successive shortest paths on the dummy-augmented bipartite network.  Left
// nodes are the sources plus the dummy source (index n), right nodes the
// targets plus the dummy target (index k).  The super source S feeds every
// left node and every right node drains into the super sink T.
class AugmentedNetwork {
 public:
  AugmentedNetwork(const std::vector<double>& f, const std::vector<double>& g,
                   double m, const Matrix& costs)
      : n_(static_cast<int>(f.size())),
        k_(static_cast<int>(g.size())),
        costs_(costs),
        supply_(n_ + 1),
        demand_(k_ + 1),
        sent_(n_ + 1, 0.0),
        recv_(k_ + 1, 0.0),
        flow_(Matrix::Zero(n_ + 1, k_ + 1)),
        pot_left_(n_ + 1, 0.0),
        pot_right_(k_ + 1, 0.0) {
    const double fm = sum(f);
    const double gm = sum(g);
    std::copy(f.begin(), f.end(), supply_.begin());
    std::copy(g.begin(), g.end(), demand_.begin());
    supply_[n_] = std::max(0.0, gm - m);
    demand_[k_] = std::max(0.0, fm - m);
    eps_ = 1e-14 * std::max(1.0, fm + gm);

    // Potentials making every initial residual arc non-negative.
    for (int b = 0; b <= k_; ++b) {
      double best = 0.0;
      for (int a = 0; a <= n_; ++a) {
        if (allowed(a, b)) best = std::min(best, cost(a, b));
      }
      pot_right_[b] = best;
    }
    pot_sink_ = *std::min_element(pot_right_.begin(), pot_right_.end());
  }

  void run() {
    while (has_supply()) {
      if (!augment_once()) {
        fail(ErrorKind::kInternal, "augmented transport network is infeasible");
      }
    }
  }

  TransportPlan plan() const {
    TransportPlan p = assemble(flow_.topLeftCorner(n_, k_), costs_, 0.0);
    p.dual_u.resize(n_);
    p.dual_v.resize(k_);
    for (int i = 0; i < n_; ++i) p.dual_u[i] = -pot_left_[i];
    for (int j = 0; j < k_; ++j) p.dual_v[j] = pot_right_[j];
    return p;
  }

 private:
  bool allowed(int a, int b) const { return !(a == n_ && b == k_); }
  double cost(int a, int b) const {
    return (a < n_ && b < k_) ? costs_(a, b) : 0.0;
  }
  double residual_supply(int a) const { return supply_[a] - sent_[a]; }
  double residual_demand(int b) const { return demand_[b] - recv_[b]; }

  bool has_supply() const {
    for (int a = 0; a <= n_; ++a) {
      if (residual_supply(a) > eps_) return true;
    }
    return false;
  }

  bool augment_once() {
    const int left = n_ + 1;
    const int right = k_ + 1;
    std::vector<double> dl(left, kInf), dr(right, kInf);
    std::vector<char> done_l(left, 0), done_r(right, 0);
    std::vector<int> pred_l(left, -1), pred_r(right, -1);
    double dist_sink = kInf;
    int pred_sink = -1;

    for (int a = 0; a < left; ++a) {
      if (residual_supply(a) > eps_) dl[a] = std::max(0.0, -pot_left_[a]);
    }

    while (true) {
      // Dense Dijkstra: pick the closest unsettled node.
      double best = kInf;
      int side = -1, node = -1;
      for (int a = 0; a < left; ++a) {
        if (!done_l[a] && dl[a] < best) { best = dl[a]; side = 0; node = a; }
      }
      for (int b = 0; b < right; ++b) {
        if (!done_r[b] && dr[b] < best) { best = dr[b]; side = 1; node = b; }
      }
      if (dist_sink <= best) break;
      if (side < 0) break;
      if (side == 0) {
        done_l[node] = 1;
        const int a = node;
        for (int b = 0; b < right; ++b) {
          if (done_r[b] || !allowed(a, b)) continue;
          const double rc = std::max(0.0, cost(a, b) + pot_left_[a] - pot_right_[b]);
          if (dl[a] + rc < dr[b]) {
            dr[b] = dl[a] + rc;
            pred_r[b] = a;
          }
        }
      } else {
        done_r[node] = 1;
        const int b = node;
        for (int a = 0; a < left; ++a) {
          if (done_l[a] || flow_(a, b) <= eps_) continue;
          const double rc = std::max(0.0, -cost(a, b) + pot_right_[b] - pot_left_[a]);
          if (dr[b] + rc < dl[a]) {
            dl[a] = dr[b] + rc;
            pred_l[a] = b;
          }
        }
        if (residual_demand(b) > eps_) {
          const double rc = std::max(0.0, pot_right_[b] - pot_sink_);
          if (dr[b] + rc < dist_sink) {
            dist_sink = dr[b] + rc;
            pred_sink = b;
          }
        }
      }
    }
    if (pred_sink < 0) return false;

    for (int a = 0; a < left; ++a) pot_left_[a] += std::min(dl[a], dist_sink);
    for (int b = 0; b < right; ++b) pot_right_[b] += std::min(dr[b], dist_sink);
    pot_sink_ += dist_sink;

    // Walk back from the sink to find the bottleneck.
    double delta = residual_demand(pred_sink);
    int b = pred_sink;
    int a = pred_r[b];
    while (pred_l[a] >= 0) {
      delta = std::min(delta, flow_(a, pred_l[a]));
      b = pred_l[a];
      a = pred_r[b];
    }
    delta = std::min(delta, residual_supply(a));

    b = pred_sink;
    recv_[b] += delta;
    a = pred_r[b];
    while (true) {
      flow_(a, b) += delta;
      if (pred_l[a] < 0) break;
      const int back = pred_l[a];
      flow_(a, back) -= delta;
      if (flow_(a, back) <= eps_) flow_(a, back) = 0.0;
      b = back;
      a = pred_r[b];
    }
    sent_[a] += delta;
    return true;
  }

  int n_, k_;
  const Matrix& costs_;
  std::vector<double> supply_, demand_, sent_, recv_;
  Matrix flow_;
  std::vector<double> pot_left_, pot_right_;
  double pot_sink_ = 0.0;
  double eps_ = 0.0;
};

}  // namespace

DiscreteMeasure DiscreteMeasure::make(std::vector<Point> support,
                                      std::vector<double> weights) {
  DiscreteMeasure mu{std::move(support), std::move(weights)};
  mu.validate();
  return mu;
}

double DiscreteMeasure::total_mass() const { return sum(weights); }

void DiscreteMeasure::validate() const {
  if (support.size() != weights.size()) {
    fail(ErrorKind::kRejectedInput, "support and weights differ in length");
  }
  check_weights(weights, "measure");
  const auto n = support.front().size();
  for (const auto& p : support) {
    if (p.size() != n || n == 0) {
      fail(ErrorKind::kRejectedInput, "measure support has mismatched dimensions");
    }
    if (!p.allFinite()) fail(ErrorKind::kRejectedInput, "measure support is not finite");
  }
}

Matrix pairwise_costs(const std::vector<Point>& sources,
                      const std::vector<Point>& targets, const CostModel& cost) {
  const long n = static_cast<long>(sources.size());
  const long k = static_cast<long>(targets.size());
  Matrix c(n, k);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < k; ++j) c(i, j) = cost.value(sources[i], targets[j]);
  }
  return c;
}

TransportPlan solve_partial(const std::vector<double>& f, const std::vector<double>& g,
                            double m, const Matrix& costs) {
  check_problem(f, g, m, costs);
  AugmentedNetwork network(f, g, std::min(m, std::min(sum(f), sum(g))), costs);
  network.run();
  return network.plan();
}

TransportPlan solve_partial(const DiscreteMeasure& f, const DiscreteMeasure& g,
                            double m, const CostModel& cost) {
  f.validate();
  g.validate();
  if (f.dimension() != g.dimension()) {
    fail(ErrorKind::kRejectedInput, "source and target dimensions differ");
  }
  return solve_partial(f.weights, g.weights, m, pairwise_costs(f.support, g.support, cost));
}

TransportPlan brute_force_partial(const std::vector<double>& f,
                                  const std::vector<double>& g, double m,
                                  const Matrix& costs) {
  check_problem(f, g, m, costs);
  const int n = static_cast<int>(f.size());
  const int k = static_cast<int>(g.size());
  if (n > 6 || k > 6) {
    fail(ErrorKind::kRejectedInput, "brute_force_partial is limited to 6 x 6 supports");
  }
  LinearProgram lp;
  lp.c.resize(n * k);
  lp.a_ub = Matrix::Zero(n + k, n * k);
  lp.b_ub.resize(n + k);
  lp.a_eq = Matrix::Ones(1, n * k);
  lp.b_eq = Vector::Constant(1, std::min(m, std::min(sum(f), sum(g))));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      lp.c[i * k + j] = costs(i, j);
      lp.a_ub(i, i * k + j) = 1.0;
      lp.a_ub(n + j, i * k + j) = 1.0;
    }
    lp.b_ub[i] = f[i];
  }
  for (int j = 0; j < k; ++j) lp.b_ub[n + j] = g[j];

  const LpSolution sol = solve_lp(lp);
  if (!sol.feasible || !sol.bounded) {
    fail(ErrorKind::kInternal, "partial transport LP reported infeasible");
  }
  Matrix flow(n, k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) flow(i, j) = sol.x[i * k + j];
  }
  TransportPlan plan = assemble(flow, costs, 1e-13);
  plan.dual_u.resize(n);
  plan.dual_v.resize(k);
  for (int i = 0; i < n; ++i) plan.dual_u[i] = sol.dual_ub[i] + sol.dual_eq[0];
  for (int j = 0; j < k; ++j) plan.dual_v[j] = sol.dual_ub[n + j];
  return plan;
}

TransportPlan brute_force_partial(const DiscreteMeasure& f, const DiscreteMeasure& g,
                                  double m, const CostModel& cost) {
  f.validate();
  g.validate();
  return brute_force_partial(f.weights, g.weights, m,
                             pairwise_costs(f.support, g.support, cost));
}

std::vector<ActivePair> extract_map(const TransportPlan& plan) {
  std::vector<ActivePair> out;
  // entries are sorted by source then target, so the first maximum wins ties.
  std::size_t i = 0;
  while (i < plan.entries.size()) {
    const std::size_t source = plan.entries[i].source;
    std::size_t best = i;
    std::size_t j = i;
    for (; j < plan.entries.size() && plan.entries[j].source == source; ++j) {
      const auto& e = plan.entries[j];
      const auto& b = plan.entries[best];
      if (e.mass > b.mass || (e.mass == b.mass && e.target < b.target)) best = j;
    }
    if (plan.entries[best].mass > 0.0) out.push_back({source, plan.entries[best].target});
    i = j;
  }
  return out;
}

double check_duality(const TransportPlan& plan, const Matrix& costs) {
  if (plan.dual_u.size() != static_cast<std::size_t>(costs.rows()) ||
      plan.dual_v.size() != static_cast<std::size_t>(costs.cols())) {
    fail(ErrorKind::kRejectedInput, "plan potentials do not match the cost matrix");
  }
  double worst = 0.0;
  for (const auto& e : plan.entries) {
    if (e.mass <= 0.0) continue;
    worst = std::max(worst, std::abs(costs(e.source, e.target) - plan.dual_u[e.source] -
                                     plan.dual_v[e.target]));
  }
  for (long i = 0; i < costs.rows(); ++i) {
    for (long j = 0; j < costs.cols(); ++j) {
      worst = std::max(worst, plan.dual_u[i] + plan.dual_v[j] - costs(i, j));
    }
  }
  return worst;
}

double check_duality(const TransportPlan& plan, const DiscreteMeasure& f,
                     const DiscreteMeasure& g, const CostModel& cost) {
  return check_duality(plan, pairwise_costs(f.support, g.support, cost));
}

void reconstruct_potentials(TransportPlan& plan, const std::vector<double>& f,
                            const std::vector<double>& g, const Matrix& costs) {
  const std::size_t n = f.size();
  const std::size_t k = g.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> u(n, nan), v(k, nan);
  std::vector<double> left(n, 0.0), right(k, 0.0);
  std::vector<std::vector<std::size_t>> by_source(n), by_target(k);
  for (std::size_t e = 0; e < plan.entries.size(); ++e) {
    const auto& pe = plan.entries[e];
    left[pe.source] += pe.mass;
    right[pe.target] += pe.mass;
    by_source[pe.source].push_back(pe.target);
    by_target[pe.target].push_back(pe.source);
  }
  // Queue entries: index < n is a source, otherwise target index - n.
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (left[i] < f[i] - 1e-12) { u[i] = 0.0; queue.push_back(i); }
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (right[j] < g[j] - 1e-12) { v[j] = 0.0; queue.push_back(n + j); }
  }
  auto drain = [&]() {
    while (!queue.empty()) {
      const std::size_t node = queue.front();
      queue.pop_front();
      if (node < n) {
        for (std::size_t j : by_source[node]) {
          if (std::isnan(v[j])) { v[j] = costs(node, j) - u[node]; queue.push_back(n + j); }
        }
      } else {
        const std::size_t j = node - n;
        for (std::size_t i : by_target[j]) {
          if (std::isnan(u[i])) { u[i] = costs(i, j) - v[j]; queue.push_back(i); }
        }
      }
    }
  };
  drain();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(u[i])) { u[i] = 0.0; queue.push_back(i); drain(); }
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (std::isnan(v[j])) v[j] = 0.0;
  }
  plan.dual_u = std::move(u);
  plan.dual_v = std::move(v);
}

bool exchange_symmetry_check(const DiscreteMeasure& f, const DiscreteMeasure& g,
                             double m, const CostModel& cost, double tolerance) {
  const Matrix c = pairwise_costs(f.support, g.support, cost);
  const TransportPlan forward = solve_partial(f.weights, g.weights, m, c);
  const Matrix swapped = c.transpose();
  const TransportPlan backward = solve_partial(g.weights, f.weights, m, swapped);
  return std::abs(forward.objective - backward.objective) <= tolerance;
}

}  // namespace ptlab
