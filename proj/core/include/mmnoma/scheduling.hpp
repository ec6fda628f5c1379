// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mmnoma/beamforming.hpp"
#include "mmnoma/geometry.hpp"

namespace mmnoma {

enum class Policy { BaseNear, BaseFar, Priority, Dynamic, Fair, Joint };

// How the scalar power weights of the dynamic/joint policies are derived.
// BeamNorm: proportional to squared beam magnitudes (encodes the cognitive
// scheme's priority; equal split for unit-norm schemes). ChannelGain:
// proportional to effective channel power (path-loss included).
enum class BetaMode { BeamNorm, ChannelGain };

struct SinrReport {
  Policy policy = Policy::BaseNear;
  Eigen::VectorXd sinr;     // linear, one entry per user of the population
  std::vector<int> order;   // reporting order (filled for Priority: by gain)
};

// Everything a SINR evaluation needs. Cluster labels are per population;
// an empty label vector means a single cluster. Interference from another
// cluster is scaled by `leakage` (1.0 = no isolation).
struct LinkState {
  Eigen::MatrixXcd near_channels;   // N x U_near (eta-scaled spherical)
  Eigen::MatrixXcd far_channels;    // N x U_far (raw Rayleigh taps)
  Eigen::VectorXd far_path_gain;    // 1/d^s per far user
  BeamSet beams;
  Eigen::VectorXd near_powers;      // per-user watts
  Eigen::VectorXd far_powers;
  double noise_power = 1e-9;
  std::vector<int> near_labels;
  std::vector<int> far_labels;
  double leakage = 1.0;
  // Eq-(17)-literal interference terms |h_m w_m|^2 (victim channel absent);
  // false switches to the conventional |h_i w_m|^2 form.
  bool literal_interference = true;
  BetaMode dynamic_beta = BetaMode::BeamNorm;
  BetaMode joint_beta = BetaMode::ChannelGain;

  void validate() const;

  int u_near() const { return static_cast<int>(near_channels.cols()); }
  int u_far() const { return static_cast<int>(far_channels.cols()); }

  // Cross-power caches (computed on first use; channels/beams are fixed for
  // the lifetime of a LinkState, powers may change between evaluations).
  const Eigen::MatrixXd& near_cross() const;   // |<h_near_i, w_near_m>|^2
  const Eigen::MatrixXd& far_cross() const;    // |<h_far_i, w_far_m>|^2
  const Eigen::MatrixXd& far_x_near() const;   // |<h_far_i, w_near_m>|^2

 private:
  mutable Eigen::MatrixXd near_cross_, far_cross_, far_x_near_;
  mutable bool cached_ = false;
  void ensure_cache() const;
};

SinrReport sinr_near_base(const LinkState& state);
SinrReport sinr_far_base(const LinkState& state);
SinrReport sinr_priority(const LinkState& state);
SinrReport sinr_dynamic(const LinkState& state);
SinrReport sinr_fair(const LinkState& state);
SinrReport sinr_joint(const LinkState& state);

SinrReport evaluate_policy(const LinkState& state, Policy policy);

}  // namespace mmnoma
