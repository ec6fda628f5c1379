// SPDX-License-Identifier: Apache-2.0
#include "mmnoma/beamforming.hpp"

#include <stdexcept>

namespace mmnoma {
namespace {

std::vector<int> peer_group(int i, int u_near, const IndexGroups& groups) {
  if (groups.empty()) {
    std::vector<int> all(u_near);
    for (int m = 0; m < u_near; ++m) all[m] = m;
    return all;
  }
  for (const auto& g : groups)
    for (int m : g)
      if (m == i) return g;
  throw std::invalid_argument("near_groups do not cover user index");
}

// Orthogonal-complement projection v -> v - Q Q^H v, with Q an orthonormal
// basis of span(W) taken from the SVD. Equivalent to the textbook
// W (W^H W)^{-1} W^H form on full-rank W but stays well-defined when near
// channels are (nearly) parallel — e.g. two users dropped almost on top of
// each other — where the Gram matrix is singular.
struct NullSpaceProjector {
  Eigen::MatrixXcd q;  // N x rank, orthonormal columns
  Eigen::Index rows_;

  explicit NullSpaceProjector(const Eigen::MatrixXcd& w) : rows_(w.rows()) {
    if (w.cols() == 0) return;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(w, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cut = sv.size() > 0 ? sv[0] * 1e-12 : 0.0;
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv[rank] > cut) ++rank;
    q = svd.matrixU().leftCols(rank);
  }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const {
    if (q.cols() == 0) return v;
    return v - q * (q.adjoint() * v);
  }
};

Eigen::MatrixXcd project_far(const NullSpaceProjector& proj,
                             const std::vector<ChannelVector>& channels_far,
                             double scale, std::vector<int>& zero_far) {
  const int n = static_cast<int>(proj.rows_);
  Eigen::MatrixXcd far(n, channels_far.size());
  for (int j = 0; j < static_cast<int>(channels_far.size()); ++j) {
    Eigen::VectorXcd p = proj.apply(channels_far[j].coeffs);
    const double norm = p.norm();
    if (norm <= 1e-10 * channels_far[j].coeffs.norm()) {
      far.col(j).setZero();
      zero_far.push_back(j);
    } else {
      far.col(j) = scale * p / norm;
    }
  }
  return far;
}

}  // namespace

InterferenceAdjustedDirection interference_adjusted_direction(
    int i, const std::vector<ChannelVector>& channels_near,
    const std::vector<ChannelVector>& /*channels_far*/, double noise_power,
    const IndexGroups& near_groups) {
  if (noise_power <= 0.0)
    throw std::invalid_argument("noise_power must be > 0");
  const auto& hi = channels_near.at(i).coeffs;
  const double signal = std::norm(std::complex<double>(hi.squaredNorm(), 0.0));
  // All-user interference minus the far terms leaves near peers + noise.
  double denom = noise_power;
  for (int m : peer_group(i, static_cast<int>(channels_near.size()),
                          near_groups)) {
    if (m == i) continue;
    denom += std::norm(hi.dot(channels_near[m].coeffs));
  }
  InterferenceAdjustedDirection out;
  out.weight = signal / denom;
  out.j_vec = out.weight * hi;
  return out;
}

BeamSet noma_beams(const std::vector<ChannelVector>& channels_near,
                   const std::vector<ChannelVector>& channels_far,
                   double noise_power, double epsilon,
                   const IndexGroups& near_groups) {
  const int n = channels_near.empty()
                    ? (channels_far.empty()
                           ? 0
                           : static_cast<int>(channels_far[0].coeffs.size()))
                    : static_cast<int>(channels_near[0].coeffs.size());
  BeamSet set;
  set.scheme = BeamScheme::NomaInspired;
  set.epsilon = epsilon;
  set.near_beams.resize(n, channels_near.size());
  for (int i = 0; i < static_cast<int>(channels_near.size()); ++i) {
    const auto dir = interference_adjusted_direction(i, channels_near,
                                                     channels_far, noise_power,
                                                     near_groups);
    set.near_beams.col(i) = dir.j_vec / dir.j_vec.norm();
  }
  NullSpaceProjector proj(set.near_beams);
  set.far_beams = project_far(proj, channels_far, epsilon, set.zero_far);
  return set;
}

BeamSet cognitive_beams(const std::vector<ChannelVector>& channels_near,
                        const std::vector<ChannelVector>& channels_far,
                        double noise_power, double epsilon,
                        const IndexGroups& near_groups) {
  const int n = channels_near.empty()
                    ? (channels_far.empty()
                           ? 0
                           : static_cast<int>(channels_far[0].coeffs.size()))
                    : static_cast<int>(channels_near[0].coeffs.size());
  BeamSet set;
  set.scheme = BeamScheme::CognitiveNoma;
  set.epsilon = epsilon;
  set.near_beams.resize(n, channels_near.size());
  Eigen::MatrixXcd j_mat(n, channels_near.size());
  for (int i = 0; i < static_cast<int>(channels_near.size()); ++i) {
    const auto dir = interference_adjusted_direction(i, channels_near,
                                                     channels_far, noise_power,
                                                     near_groups);
    j_mat.col(i) = dir.j_vec;
    // J / ||J||^2: non-unit magnitude 1/(weight * ||h||) encodes priority.
    set.near_beams.col(i) = dir.j_vec / dir.j_vec.squaredNorm();
  }
  NullSpaceProjector proj(j_mat);
  set.far_beams = project_far(proj, channels_far, 1.0, set.zero_far);
  return set;
}

BeamSet random_beams(int u_near, int u_far, int n_antennas,
                     RandomStream& rng) {
  if (n_antennas < 1) throw std::invalid_argument("n_antennas must be >= 1");
  auto draw = [&](Eigen::MatrixXcd& mat, int cols) {
    mat.resize(n_antennas, cols);
    for (int c = 0; c < cols; ++c) {
      for (int r = 0; r < n_antennas; ++r) mat(r, c) = rng.complex_gaussian();
      mat.col(c).normalize();
    }
  };
  BeamSet set;
  set.scheme = BeamScheme::Random;
  set.epsilon = 1.0;
  draw(set.near_beams, u_near);
  draw(set.far_beams, u_far);
  return set;
}

}  // namespace mmnoma
