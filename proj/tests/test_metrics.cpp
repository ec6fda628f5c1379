// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "mmnoma/metrics.hpp"

using namespace mmnoma;

namespace {
SinrReport report(std::initializer_list<double> sinrs) {
  SinrReport r;
  r.sinr.resize(static_cast<int>(sinrs.size()));
  int i = 0;
  for (double s : sinrs) r.sinr[i++] = s;
  return r;
}
}  // namespace

TEST_CASE("sum_rate hand values") {
  CHECK(sum_rate(report({0.0, 0.0})) == 0.0);
  CHECK(sum_rate(report({1.0})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sum_rate(report({3.0, 7.0})) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("sum_rate equals the per-user sum") {
  const auto r = report({0.3, 2.5, 11.0, 0.0});
  CHECK(std::abs(sum_rate(r) - per_user_rates(r).sum()) <= 1e-12);
}

TEST_CASE("energy efficiency") {
  PowerVector p{Eigen::VectorXd::Constant(4, 5.0), 20.0};
  CHECK(energy_efficiency(5.0, p) == doctest::Approx(0.25).epsilon(1e-12));
  PowerVector doubled{Eigen::VectorXd::Constant(4, 10.0), 40.0};
  CHECK(energy_efficiency(5.0, doubled) ==
        doctest::Approx(0.125).epsilon(1e-12));
  PowerVector zero{Eigen::VectorXd::Zero(2), 1.0};
  CHECK_THROWS(energy_efficiency(5.0, zero));

  // EE * total power == sum rate on a composed instance
  const auto r = report({3.0, 7.0});
  const auto m = compute_metrics(r, p);
  CHECK(std::abs(m.energy_efficiency * p.powers.sum() - m.sum_rate) <= 1e-12);
}

TEST_CASE("connectivity thresholding") {
  CHECK(connectivity(report({10.0, 10.0}), 0.0) == 1.0);
  CHECK(connectivity(report({0.0, 0.0}), 0.0) == 0.0);
  CHECK(connectivity(report({2.0, 0.5}), 0.0) == 0.5);

  // non-increasing in the threshold
  const auto r = report({0.2, 1.0, 4.0, 9.0});
  double prev = 1.0;
  for (double th = -15.0; th <= 15.0; th += 0.5) {
    const double c = connectivity(r, th);
    CHECK(c <= prev + 1e-15);
    prev = c;
  }
}

TEST_CASE("rate positivity") {
  const auto rates = per_user_rates(report({0.0, 1e-14, 2.0}));
  CHECK(rates[0] == 0.0);
  CHECK(rates[1] > 0.0);
  CHECK(rates[2] > 0.0);
}
