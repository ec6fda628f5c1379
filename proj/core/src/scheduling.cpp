// SPDX-License-Identifier: Apache-2.0
#include "mmnoma/scheduling.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mmnoma {

void LinkState::validate() const {
  if (noise_power <= 0.0)
    throw std::invalid_argument("LinkState: noise_power must be > 0");
  if (beams.near_beams.cols() != near_channels.cols() ||
      beams.far_beams.cols() != far_channels.cols())
    throw std::invalid_argument("LinkState: beam/channel count mismatch");
  if (near_powers.size() != near_channels.cols() ||
      far_powers.size() != far_channels.cols())
    throw std::invalid_argument("LinkState: power/channel count mismatch");
  if (far_path_gain.size() != far_channels.cols())
    throw std::invalid_argument("LinkState: path gain count mismatch");
  if (!near_labels.empty() &&
      static_cast<int>(near_labels.size()) != u_near())
    throw std::invalid_argument("LinkState: near label count mismatch");
  if (!far_labels.empty() && static_cast<int>(far_labels.size()) != u_far())
    throw std::invalid_argument("LinkState: far label count mismatch");
}

void LinkState::ensure_cache() const {
  if (cached_) return;
  near_cross_ = (near_channels.adjoint() * beams.near_beams).cwiseAbs2();
  far_cross_ = (far_channels.adjoint() * beams.far_beams).cwiseAbs2();
  far_x_near_ = (far_channels.adjoint() * beams.near_beams).cwiseAbs2();
  cached_ = true;
}

const Eigen::MatrixXd& LinkState::near_cross() const {
  ensure_cache();
  return near_cross_;
}
const Eigen::MatrixXd& LinkState::far_cross() const {
  ensure_cache();
  return far_cross_;
}
const Eigen::MatrixXd& LinkState::far_x_near() const {
  ensure_cache();
  return far_x_near_;
}

namespace {

double scope(const std::vector<int>& labels, int i, int m, double leakage) {
  if (labels.empty()) return 1.0;
  return labels[i] == labels[m] ? 1.0 : leakage;
}

// near and far users never share a cluster
double cross_population_scope(const LinkState& s) {
  return (s.near_labels.empty() && s.far_labels.empty()) ? 1.0 : s.leakage;
}

Eigen::VectorXd beta_weights(const LinkState& s, bool far_pop, BetaMode mode) {
  const int u = far_pop ? s.u_far() : s.u_near();
  Eigen::VectorXd raw(u);
  for (int m = 0; m < u; ++m) {
    if (mode == BetaMode::BeamNorm) {
      raw[m] = far_pop ? s.beams.far_beams.col(m).squaredNorm()
                       : s.beams.near_beams.col(m).squaredNorm();
    } else {
      raw[m] = far_pop
                   ? s.far_path_gain[m] * s.far_channels.col(m).squaredNorm()
                   : s.near_channels.col(m).squaredNorm();
    }
  }
  const double sum = raw.sum();
  if (sum <= 0.0) return Eigen::VectorXd::Constant(u, 1.0 / std::max(1, u));
  return raw / sum;
}

}  // namespace

SinrReport sinr_near_base(const LinkState& s) {
  s.validate();
  const auto& c = s.near_cross();
  const int u = s.u_near();
  SinrReport rep;
  rep.policy = Policy::BaseNear;
  rep.sinr.resize(u);
  // Far users' signals are SIC-decoded first; their terms cancel exactly,
  // leaving near-peer interference plus noise.
  for (int i = 0; i < u; ++i) {
    double denom = s.noise_power;
    for (int m = 0; m < u; ++m) {
      if (m == i) continue;
      denom += scope(s.near_labels, i, m, s.leakage) * s.near_powers[m] *
               c(i, m);
    }
    rep.sinr[i] = s.near_powers[i] * c(i, i) / denom;
  }
  return rep;
}

SinrReport sinr_far_base(const LinkState& s) {
  s.validate();
  const auto& f = s.far_cross();
  const auto& fn = s.far_x_near();
  const int u = s.u_far();
  const double xscope = cross_population_scope(s);
  SinrReport rep;
  rep.policy = Policy::BaseFar;
  rep.sinr.resize(u);
  for (int i = 0; i < u; ++i) {
    const double g = s.far_path_gain[i];
    double denom = s.noise_power;
    for (int m = 0; m < u; ++m) {
      if (m == i) continue;
      denom += scope(s.far_labels, i, m, s.leakage) * s.far_powers[m] * g *
               f(i, m);
    }
    // decoded first under NOMA: interference from every user, near included
    for (int m = 0; m < s.u_near(); ++m)
      denom += xscope * s.near_powers[m] * g * fn(i, m);
    rep.sinr[i] = s.far_powers[i] * g * f(i, i) / denom;
  }
  return rep;
}

SinrReport sinr_priority(const LinkState& s) {
  s.validate();
  const auto& c = s.near_cross();
  const int u = s.u_near();
  const double share = u > 0 ? s.near_powers.sum() / u : 0.0;
  SinrReport rep;
  rep.policy = Policy::Priority;
  rep.sinr.resize(u);
  for (int i = 0; i < u; ++i) {
    double denom = s.noise_power;
    for (int m = 0; m < u; ++m) {
      if (m == i) continue;
      const double term = s.literal_interference ? c(m, m) : c(i, m);
      denom += scope(s.near_labels, i, m, s.leakage) * share * term;
    }
    rep.sinr[i] = share * c(i, i) / denom;
  }
  // reporting order: descending channel gain
  rep.order.resize(u);
  std::iota(rep.order.begin(), rep.order.end(), 0);
  std::stable_sort(rep.order.begin(), rep.order.end(), [&](int a, int b) {
    return s.near_channels.col(a).squaredNorm() >
           s.near_channels.col(b).squaredNorm();
  });
  return rep;
}

SinrReport sinr_dynamic(const LinkState& s) {
  s.validate();
  const auto& c = s.near_cross();
  const int u = s.u_near();
  const double p_total = s.near_powers.sum();
  const Eigen::VectorXd beta = beta_weights(s, /*far_pop=*/false,
                                            s.dynamic_beta);
  SinrReport rep;
  rep.policy = Policy::Dynamic;
  rep.sinr.resize(u);
  for (int i = 0; i < u; ++i) {
    double denom = s.noise_power;
    for (int m = 0; m < u; ++m) {
      if (m == i) continue;
      const double term = s.literal_interference ? c(m, m) : c(i, m);
      denom += scope(s.near_labels, i, m, s.leakage) * p_total * beta[m] *
               term;
    }
    rep.sinr[i] = p_total * beta[i] * c(i, i) / denom;
  }
  return rep;
}

SinrReport sinr_fair(const LinkState& s) {
  s.validate();
  const auto& f = s.far_cross();
  const int u = s.u_far();
  const double share = u > 0 ? s.far_powers.sum() / u : 0.0;
  SinrReport rep;
  rep.policy = Policy::Fair;
  rep.sinr.resize(u);
  for (int i = 0; i < u; ++i) {
    const double g = s.far_path_gain[i];
    double denom = s.noise_power;
    for (int m = 0; m < u; ++m) {
      if (m == i) continue;
      denom += scope(s.far_labels, i, m, s.leakage) * share * g * f(i, m);
    }
    rep.sinr[i] = share * g * f(i, i) / denom;
  }
  return rep;
}

SinrReport sinr_joint(const LinkState& s) {
  s.validate();
  const auto& f = s.far_cross();
  const int u = s.u_far();
  const double p_total = s.far_powers.sum();
  const Eigen::VectorXd beta = beta_weights(s, /*far_pop=*/true, s.joint_beta);
  SinrReport rep;
  rep.policy = Policy::Joint;
  rep.sinr.resize(u);
  for (int i = 0; i < u; ++i) {
    const double g = s.far_path_gain[i];
    double denom = s.noise_power;
    for (int m = 0; m < u; ++m) {
      if (m == i) continue;
      denom += scope(s.far_labels, i, m, s.leakage) * p_total * beta[m] * g *
               f(i, m);
    }
    rep.sinr[i] = p_total * beta[i] * g * f(i, i) / denom;
  }
  return rep;
}

SinrReport evaluate_policy(const LinkState& state, Policy policy) {
  switch (policy) {
    case Policy::BaseNear: return sinr_near_base(state);
    case Policy::BaseFar: return sinr_far_base(state);
    case Policy::Priority: return sinr_priority(state);
    case Policy::Dynamic: return sinr_dynamic(state);
    case Policy::Fair: return sinr_fair(state);
    case Policy::Joint: return sinr_joint(state);
  }
  throw std::logic_error("unknown policy");
}

}  // namespace mmnoma
