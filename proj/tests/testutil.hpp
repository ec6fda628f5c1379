// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "mmnoma/beamforming.hpp"
#include "mmnoma/rng.hpp"
#include "mmnoma/scheduling.hpp"

namespace testutil {

inline Eigen::VectorXcd random_vec(mmnoma::RandomStream& rng, int n) {
  Eigen::VectorXcd v(n);
  for (int r = 0; r < n; ++r) v[r] = rng.complex_gaussian();
  return v;
}

inline std::vector<mmnoma::ChannelVector> random_channels(
    mmnoma::RandomStream& rng, int n, int count, bool with_gain = false) {
  std::vector<mmnoma::ChannelVector> out(count);
  for (int c = 0; c < count; ++c) {
    out[c].coeffs = random_vec(rng, n);
    out[c].gain = with_gain ? 0.05 + 0.95 * rng.uniform() : 1.0;
    out[c].owner = c;
  }
  return out;
}

inline Eigen::MatrixXcd to_matrix(const std::vector<mmnoma::ChannelVector>& ch,
                                  int n) {
  Eigen::MatrixXcd m(n, static_cast<int>(ch.size()));
  for (int c = 0; c < m.cols(); ++c) m.col(c) = ch[c].coeffs;
  return m;
}

struct InstanceOptions {
  mmnoma::BeamScheme scheme = mmnoma::BeamScheme::NomaInspired;
  bool clustered = false;
  double leakage = 0.2;
  double noise = 1e-3;
};

// Random but structurally valid link state: channels, beams for the chosen
// scheme, positive powers, optional cluster labels.
inline mmnoma::LinkState random_state(mmnoma::RandomStream& rng, int n,
                                      int u_near, int u_far,
                                      InstanceOptions opt = {}) {
  const auto near = random_channels(rng, n, u_near);
  const auto far = random_channels(rng, n, u_far, /*with_gain=*/true);

  mmnoma::LinkState s;
  s.near_channels = to_matrix(near, n);
  s.far_channels = to_matrix(far, n);
  s.far_path_gain.resize(u_far);
  for (int i = 0; i < u_far; ++i) s.far_path_gain[i] = far[i].gain;
  s.noise_power = opt.noise;
  s.leakage = opt.leakage;

  switch (opt.scheme) {
    case mmnoma::BeamScheme::NomaInspired:
      s.beams = mmnoma::noma_beams(near, far, s.noise_power, 0.95);
      break;
    case mmnoma::BeamScheme::CognitiveNoma:
      s.beams = mmnoma::cognitive_beams(near, far, s.noise_power, 0.95);
      break;
    case mmnoma::BeamScheme::Random:
      s.beams = mmnoma::random_beams(u_near, u_far, n, rng);
      break;
  }

  s.near_powers.resize(u_near);
  s.far_powers.resize(u_far);
  for (int i = 0; i < u_near; ++i) s.near_powers[i] = 0.1 + rng.uniform();
  for (int i = 0; i < u_far; ++i) s.far_powers[i] = 0.1 + rng.uniform();

  if (opt.clustered) {
    s.near_labels.resize(u_near);
    s.far_labels.resize(u_far);
    for (int i = 0; i < u_near; ++i)
      s.near_labels[i] = static_cast<int>(rng.next_u64() % 3);
    for (int i = 0; i < u_far; ++i)
      s.far_labels[i] = 100 + static_cast<int>(rng.next_u64() % 3);
  }
  return s;
}

}  // namespace testutil
