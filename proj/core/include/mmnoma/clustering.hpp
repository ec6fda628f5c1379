// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "mmnoma/geometry.hpp"

namespace mmnoma {

// Per-user clustering features, standardized to zero mean / unit variance
// over the input population (zero-variance dimensions map to zeros).
struct UserFeatures {
  double channel_gain_db = 0.0;
  double mobility_speed = 0.0;
  double traffic_weight = 0.0;

  Eigen::Vector3d vec() const {
    return {channel_gain_db, mobility_speed, traffic_weight};
  }
};

struct ClusterAssignment {
  std::vector<int> labels;  // final (refined) cluster id per user
  int k_primary = 0;
  std::map<int, std::vector<int>> subcluster_map;  // primary id -> refined ids

  int n_clusters() const;
};

std::vector<UserFeatures> build_features(
    const std::vector<UserProfile>& users,
    const std::vector<ChannelVector>& channels);

// Normalized spectral clustering: Gaussian similarity with median-heuristic
// bandwidth, symmetric normalized Laplacian, k-means (20 restarts) on the
// rows of the k smallest eigenvectors.
std::vector<int> spectral_cluster(const std::vector<UserFeatures>& features,
                                  int k, std::uint64_t seed = 0);

// DBSCAN inside each primary cluster; noise points become singletons so no
// user disappears from the scheduler's view.
ClusterAssignment dbscan_refine(const std::vector<int>& primary_labels,
                                const std::vector<UserFeatures>& features,
                                double eps, int min_pts);

// Spectral + DBSCAN pipeline, run separately on the Near and Far populations.
// labels in the result are indexed by position in `users` and globally
// unique across the two populations. k <= 0 selects ceil(U_pop / 4).
ClusterAssignment hybrid_cluster(const std::vector<UserProfile>& users,
                                 const std::vector<ChannelVector>& channels,
                                 int k, double eps, int min_pts,
                                 std::uint64_t seed = 0);

}  // namespace mmnoma
