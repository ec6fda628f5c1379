// SPDX-License-Identifier: Apache-2.0
#include "mmnoma/power.hpp"

#include <cmath>
#include <stdexcept>

namespace mmnoma {

void PowerVector::check_feasible() const {
  if ((powers.array() < 0.0).any())
    throw std::runtime_error("PowerVector: negative power");
  if (powers.sum() > total_budget + 1e-9)
    throw std::runtime_error("PowerVector: budget exceeded");
}

void FgConfig::validate() const {
  if (step_weight <= 0.0 || step_weight > 1.0)
    throw std::invalid_argument("FgConfig: step_weight must be in (0, 1]");
  if (max_iters < 1) throw std::invalid_argument("FgConfig: max_iters >= 1");
  if (tol <= 0.0) throw std::invalid_argument("FgConfig: tol must be > 0");
}

FgResult fg_allocate(const RateFn& rate_fn, double p_total, int n_users,
                     const FgConfig& cfg,
                     const std::function<void(const Eigen::VectorXd&)>&
                         observer) {
  if (p_total <= 0.0) throw std::invalid_argument("fg_allocate: P_T > 0");
  if (n_users < 1) throw std::invalid_argument("fg_allocate: n_users >= 1");
  cfg.validate();

  FgResult res;
  Eigen::VectorXd p =
      Eigen::VectorXd::Constant(n_users, p_total / n_users);
  int s = 0;
  for (; s < cfg.max_iters; ++s) {
    const Eigen::VectorXd rates = rate_fn(p);
    if (!rates.allFinite() || (rates.array() < 0.0).any())
      throw std::runtime_error("fg_allocate: rate_fn returned invalid rates");
    const double rate_sum = rates.sum();
    if (rate_sum <= 0.0) {
      res.degenerate_rates = true;
      p.setConstant(p_total / n_users);
      break;
    }
    Eigen::VectorXd next =
        p + cfg.step_weight * (rates / rate_sum - p / p_total);
    next = next.cwiseMax(0.0);
    const double sum = next.sum();
    if (sum > p_total) next *= p_total / sum;  // never increases a coordinate
    const double delta = (next - p).cwiseAbs().maxCoeff();
    p = next;
    if (observer) observer(p);
    if (delta < cfg.tol * p_total) {
      ++s;
      break;
    }
  }
  res.iterations = s;
  res.allocation = {p, p_total};
  res.allocation.check_feasible();
  return res;
}

PowerVector equal_allocate(int n_users, double p_total) {
  if (p_total <= 0.0) throw std::invalid_argument("equal_allocate: P_T > 0");
  if (n_users < 1) throw std::invalid_argument("equal_allocate: n_users >= 1");
  return {Eigen::VectorXd::Constant(n_users, p_total / n_users), p_total};
}

PowerVector brute_force_optimal(const RateFn& rate_fn, double p_total,
                                int n_users, int grid_steps) {
  if (n_users < 1 || n_users > 4)
    throw std::invalid_argument(
        "brute_force_optimal: U must be in [1, 4] (combinatorial guard)");
  if (grid_steps < 1 || grid_steps > 50)
    throw std::invalid_argument("brute_force_optimal: grid_steps in [1, 50]");

  Eigen::VectorXd best = Eigen::VectorXd::Zero(n_users);
  double best_rate = -1.0;
  double best_var = 0.0;
  const double unit = p_total / grid_steps;

  std::vector<int> ticks(n_users, 0);
  auto variance = [&](const Eigen::VectorXd& v) {
    const double mean = v.mean();
    return (v.array() - mean).square().sum() / n_users;
  };
  // enumerate all tick vectors with sum <= grid_steps
  while (true) {
    int total = 0;
    for (int t : ticks) total += t;
    if (total <= grid_steps) {
      Eigen::VectorXd p(n_users);
      for (int u = 0; u < n_users; ++u) p[u] = ticks[u] * unit;
      const double rate = rate_fn(p).sum();
      const double var = variance(p);
      if (rate > best_rate + 1e-12 ||
          (std::abs(rate - best_rate) <= 1e-12 && var < best_var)) {
        best_rate = rate;
        best_var = var;
        best = p;
      }
    }
    int u = 0;
    while (u < n_users && ++ticks[u] > grid_steps) ticks[u++] = 0;
    if (u == n_users) break;
  }
  return {best, p_total};
}

}  // namespace mmnoma
