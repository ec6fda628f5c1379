// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mmnoma/geometry.hpp"
#include "mmnoma/rng.hpp"

namespace mmnoma {

enum class BeamScheme { NomaInspired, CognitiveNoma, Random };

struct BeamSet {
  BeamScheme scheme = BeamScheme::Random;
  Eigen::MatrixXcd near_beams;  // N x U_near
  Eigen::MatrixXcd far_beams;   // N x U_far
  double epsilon = 1.0;
  // Far users whose channel fell entirely inside the near span; they keep a
  // zero beam (and hence zero rate) so user counts stay comparable.
  std::vector<int> zero_far;
};

// The interference-adjusted direction of Eq-(10) style weighting: the owner's
// channel scaled by signal-power-over-(near-peer interference + noise). The
// far-user terms of the written ratio cancel the matching terms of the
// all-user sum, so only near peers enter the denominator.
struct InterferenceAdjustedDirection {
  Eigen::VectorXcd j_vec;
  double weight = 0.0;
};

// Optional grouping of near users (e.g. per cluster): the interference sum in
// the weight is restricted to the owner's group. Empty = one global group.
using IndexGroups = std::vector<std::vector<int>>;

InterferenceAdjustedDirection interference_adjusted_direction(
    int i, const std::vector<ChannelVector>& channels_near,
    const std::vector<ChannelVector>& channels_far, double noise_power,
    const IndexGroups& near_groups = {});

BeamSet noma_beams(const std::vector<ChannelVector>& channels_near,
                   const std::vector<ChannelVector>& channels_far,
                   double noise_power, double epsilon,
                   const IndexGroups& near_groups = {});

BeamSet cognitive_beams(const std::vector<ChannelVector>& channels_near,
                        const std::vector<ChannelVector>& channels_far,
                        double noise_power, double epsilon,
                        const IndexGroups& near_groups = {});

BeamSet random_beams(int u_near, int u_far, int n_antennas, RandomStream& rng);

}  // namespace mmnoma
