// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "mmnoma/power.hpp"
#include "mmnoma/scheduling.hpp"

namespace mmnoma {

struct MetricSet {
  double sum_rate = 0.0;           // bit/s/Hz
  double energy_efficiency = 0.0;  // bit/s/Hz/W
  double connectivity = 0.0;       // fraction in [0, 1]
  Eigen::VectorXd per_user_rates;
};

Eigen::VectorXd per_user_rates(const SinrReport& report);

double sum_rate(const SinrReport& report);

double energy_efficiency(double rate, const PowerVector& powers);

// Fraction of the population whose SINR clears threshold_db.
double connectivity(const SinrReport& report, double threshold_db = 0.0);

MetricSet compute_metrics(const SinrReport& report, const PowerVector& powers,
                          double threshold_db = 0.0);

}  // namespace mmnoma
