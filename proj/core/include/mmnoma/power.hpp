// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>

namespace mmnoma {

struct PowerVector {
  Eigen::VectorXd powers;       // watts, >= 0
  double total_budget = 0.0;    // P_T; sum(powers) <= P_T + 1e-9

  void check_feasible() const;
};

struct FgConfig {
  double step_weight = 0.3;  // ell in (0, 1]
  int max_iters = 200;
  double tol = 1e-6;  // relative per-user change threshold

  void validate() const;
};

// Per-user achievable rates as a function of the current power vector.
using RateFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct FgResult {
  PowerVector allocation;
  int iterations = 0;
  bool degenerate_rates = false;  // all-zero rates hit at some iterate
};

// Fairness-gradual allocation: steer each user's budget share toward its
// rate share. Per iteration: update by ell*(rate share - power share), clamp
// negatives to zero, rescale if the budget is exceeded; stop on small change
// or the iteration cap. An optional observer sees every feasible iterate.
FgResult fg_allocate(const RateFn& rate_fn, double p_total, int n_users,
                     const FgConfig& cfg,
                     const std::function<void(const Eigen::VectorXd&)>&
                         observer = nullptr);

PowerVector equal_allocate(int n_users, double p_total);

// Exhaustive simplex-grid search over sum(P) <= P_T maximizing the sum rate;
// ties break toward the lower-variance allocation. Desk-scale testing oracle.
PowerVector brute_force_optimal(const RateFn& rate_fn, double p_total,
                                int n_users, int grid_steps);

}  // namespace mmnoma
