// SPDX-License-Identifier: Apache-2.0
#include "mmnoma/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace mmnoma {

Eigen::VectorXd per_user_rates(const SinrReport& report) {
  if (!report.sinr.allFinite())
    throw std::invalid_argument("per_user_rates: non-finite SINR");
  return (report.sinr.array() + 1.0).log() / std::log(2.0);
}

double sum_rate(const SinrReport& report) {
  return per_user_rates(report).sum();
}

double energy_efficiency(double rate, const PowerVector& powers) {
  const double total = powers.powers.sum();
  if (total <= 0.0)
    throw std::domain_error("energy_efficiency: zero total power");
  return rate / total;
}

double connectivity(const SinrReport& report, double threshold_db) {
  const int u = static_cast<int>(report.sinr.size());
  if (u == 0) return 0.0;
  const double threshold = std::pow(10.0, threshold_db / 10.0);
  int connected = 0;
  for (int i = 0; i < u; ++i)
    if (report.sinr[i] >= threshold) ++connected;
  return static_cast<double>(connected) / u;
}

MetricSet compute_metrics(const SinrReport& report, const PowerVector& powers,
                          double threshold_db) {
  MetricSet m;
  m.per_user_rates = per_user_rates(report);
  m.sum_rate = m.per_user_rates.sum();
  m.energy_efficiency = energy_efficiency(m.sum_rate, powers);
  m.connectivity = connectivity(report, threshold_db);
  return m;
}

}  // namespace mmnoma
