// SPDX-License-Identifier: Apache-2.0
#include "mmnoma/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "mmnoma/rng.hpp"

namespace mmnoma {

int ClusterAssignment::n_clusters() const {
  std::set<int> ids(labels.begin(), labels.end());
  return static_cast<int>(ids.size());
}

std::vector<UserFeatures> build_features(
    const std::vector<UserProfile>& users,
    const std::vector<ChannelVector>& channels) {
  if (users.size() != channels.size())
    throw std::invalid_argument("build_features: one channel per user");
  const int n = static_cast<int>(users.size());
  Eigen::MatrixXd raw(n, 3);
  for (int i = 0; i < n; ++i) {
    double power = channels[i].coeffs.squaredNorm();
    if (users[i].field_class == FieldClass::Far) power *= channels[i].gain;
    raw(i, 0) = 10.0 * std::log10(power);
    raw(i, 1) = users[i].mobility_speed;
    raw(i, 2) = users[i].traffic_weight;
  }
  for (int c = 0; c < 3; ++c) {
    const double mean = raw.col(c).mean();
    raw.col(c).array() -= mean;
    const double var = raw.col(c).squaredNorm() / n;  // population variance
    if (var > 1e-24)
      raw.col(c) /= std::sqrt(var);
    else
      raw.col(c).setZero();
  }
  std::vector<UserFeatures> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = {raw(i, 0), raw(i, 1), raw(i, 2)};
  return out;
}

namespace {

// k-means++ seeding and Lloyd iterations; empty clusters are repaired by
// stealing the point farthest from its centroid.
std::vector<int> kmeans(const Eigen::MatrixXd& rows, int k,
                        std::uint64_t seed, int restarts = 20) {
  const int n = static_cast<int>(rows.rows());
  const int d = static_cast<int>(rows.cols());
  RandomStream rng(RandomStream::mix(seed ^ 0x6b6d65616e73ULL));

  std::vector<int> best(n, 0);
  double best_cost = std::numeric_limits<double>::infinity();

  for (int rs = 0; rs < restarts; ++rs) {
    Eigen::MatrixXd centers(k, d);
    std::vector<double> dist2(n, std::numeric_limits<double>::infinity());
    centers.row(0) = rows.row(static_cast<int>(rng.next_u64() % n));
    for (int c = 1; c < k; ++c) {
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        dist2[i] = std::min(dist2[i],
                            (rows.row(i) - centers.row(c - 1)).squaredNorm());
        total += dist2[i];
      }
      int pick = 0;
      if (total > 0.0) {
        double target = rng.uniform() * total, acc = 0.0;
        for (int i = 0; i < n; ++i) {
          acc += dist2[i];
          if (acc >= target) { pick = i; break; }
        }
      } else {
        pick = static_cast<int>(rng.next_u64() % n);
      }
      centers.row(c) = rows.row(pick);
    }

    std::vector<int> labels(n, 0);
    for (int iter = 0; iter < 100; ++iter) {
      bool changed = false;
      for (int i = 0; i < n; ++i) {
        int arg = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
          const double dd = (rows.row(i) - centers.row(c)).squaredNorm();
          if (dd < best_d) { best_d = dd; arg = c; }
        }
        if (labels[i] != arg) { labels[i] = arg; changed = true; }
      }
      // repair empty clusters
      std::vector<int> counts(k, 0);
      for (int l : labels) ++counts[l];
      for (int c = 0; c < k; ++c) {
        if (counts[c] > 0) continue;
        int far_i = -1;
        double far_d = -1.0;
        for (int i = 0; i < n; ++i) {
          if (counts[labels[i]] <= 1) continue;
          const double dd = (rows.row(i) - centers.row(labels[i])).squaredNorm();
          if (dd > far_d) { far_d = dd; far_i = i; }
        }
        if (far_i >= 0) {
          --counts[labels[far_i]];
          labels[far_i] = c;
          ++counts[c];
          changed = true;
        }
      }
      centers.setZero();
      for (int i = 0; i < n; ++i) centers.row(labels[i]) += rows.row(i);
      for (int c = 0; c < k; ++c)
        if (counts[c] > 0) centers.row(c) /= counts[c];
      if (!changed) break;
    }

    double cost = 0.0;
    for (int i = 0; i < n; ++i)
      cost += (rows.row(i) - centers.row(labels[i])).squaredNorm();
    if (cost < best_cost) { best_cost = cost; best = labels; }
  }
  return best;
}

}  // namespace

std::vector<int> spectral_cluster(const std::vector<UserFeatures>& features,
                                  int k, std::uint64_t seed) {
  const int n = static_cast<int>(features.size());
  if (k < 1 || k > n)
    throw std::domain_error("spectral_cluster: need 1 <= k <= U");
  if (k == 1) return std::vector<int>(n, 0);
  if (k == n) {
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = i;
    return labels;
  }

  Eigen::MatrixXd f(n, 3);
  for (int i = 0; i < n; ++i) f.row(i) = features[i].vec().transpose();

  std::vector<double> dists;
  dists.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      dists.push_back((f.row(i) - f.row(j)).norm());
  std::sort(dists.begin(), dists.end());
  const double gamma = dists.empty() ? 0.0 : dists[dists.size() / 2];
  if (gamma <= 0.0) {
    // All points coincide; any balanced partition is valid.
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = i * k / n;
    return labels;
  }

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        w(i, j) = std::exp(-(f.row(i) - f.row(j)).squaredNorm() /
                           (2.0 * gamma * gamma));
  Eigen::VectorXd deg = w.rowwise().sum().cwiseMax(1e-300);
  Eigen::VectorXd dinv = deg.array().rsqrt();
  Eigen::MatrixXd lap =
      Eigen::MatrixXd::Identity(n, n) -
      dinv.asDiagonal() * w * dinv.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap);
  Eigen::MatrixXd embed = eig.eigenvectors().leftCols(k);
  return kmeans(embed, k, seed);
}

ClusterAssignment dbscan_refine(const std::vector<int>& primary_labels,
                                const std::vector<UserFeatures>& features,
                                double eps, int min_pts) {
  if (eps <= 0.0) throw std::invalid_argument("dbscan_refine: eps must be > 0");
  if (min_pts < 1)
    throw std::invalid_argument("dbscan_refine: min_pts must be >= 1");
  if (primary_labels.size() != features.size())
    throw std::invalid_argument("dbscan_refine: size mismatch");

  const int n = static_cast<int>(features.size());
  ClusterAssignment out;
  out.labels.assign(n, -1);

  std::vector<int> primaries(primary_labels);
  std::sort(primaries.begin(), primaries.end());
  primaries.erase(std::unique(primaries.begin(), primaries.end()),
                  primaries.end());
  out.k_primary = static_cast<int>(primaries.size());

  int next_id = 0;
  for (int p : primaries) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (primary_labels[i] == p) members.push_back(i);
    const int m = static_cast<int>(members.size());

    // eps-neighborhoods within the primary cluster (point counts itself)
    std::vector<std::vector<int>> nbr(m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if ((features[members[a]].vec() - features[members[b]].vec()).norm() <=
            eps)
          nbr[a].push_back(b);

    std::vector<int> local(m, -1);  // -1 unvisited, -2 noise
    for (int a = 0; a < m; ++a) {
      if (local[a] != -1) continue;
      if (static_cast<int>(nbr[a].size()) < min_pts) {
        local[a] = -2;
        continue;
      }
      const int cid = next_id++;
      local[a] = cid;
      std::vector<int> frontier(nbr[a]);
      for (size_t qi = 0; qi < frontier.size(); ++qi) {
        const int b = frontier[qi];
        if (local[b] == -2) local[b] = cid;  // border point
        if (local[b] != -1) continue;
        local[b] = cid;
        if (static_cast<int>(nbr[b].size()) >= min_pts)
          frontier.insert(frontier.end(), nbr[b].begin(), nbr[b].end());
      }
      out.subcluster_map[p].push_back(cid);
    }
    for (int a = 0; a < m; ++a) {
      if (local[a] == -2) {  // noise -> singleton
        local[a] = next_id++;
        out.subcluster_map[p].push_back(local[a]);
      }
      out.labels[members[a]] = local[a];
    }
  }
  return out;
}

ClusterAssignment hybrid_cluster(const std::vector<UserProfile>& users,
                                 const std::vector<ChannelVector>& channels,
                                 int k, double eps, int min_pts,
                                 std::uint64_t seed) {
  const int n = static_cast<int>(users.size());
  if (static_cast<int>(channels.size()) != n)
    throw std::invalid_argument("hybrid_cluster: one channel per user");

  ClusterAssignment out;
  out.labels.assign(n, -1);
  int id_offset = 0;
  int primary_offset = 0;

  for (FieldClass fc : {FieldClass::Near, FieldClass::Far}) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (users[i].field_class == fc) idx.push_back(i);
    if (idx.empty()) continue;

    std::vector<UserProfile> pop_users;
    std::vector<ChannelVector> pop_channels;
    for (int i : idx) {
      pop_users.push_back(users[i]);
      pop_channels.push_back(channels[i]);
    }
    const auto feats = build_features(pop_users, pop_channels);
    const int u_pop = static_cast<int>(idx.size());
    const int k_pop =
        k > 0 ? std::min(k, u_pop) : (u_pop + 3) / 4;  // ceil(U/4)
    const auto primary = spectral_cluster(feats, std::max(1, k_pop),
                                          seed ^ static_cast<int>(fc));
    const auto refined = dbscan_refine(primary, feats, eps, min_pts);

    int max_id = -1;
    for (size_t a = 0; a < idx.size(); ++a) {
      out.labels[idx[a]] = refined.labels[a] + id_offset;
      max_id = std::max(max_id, refined.labels[a]);
    }
    for (const auto& [p, subs] : refined.subcluster_map) {
      auto& dst = out.subcluster_map[p + primary_offset];
      for (int s : subs) dst.push_back(s + id_offset);
    }
    out.k_primary += refined.k_primary;
    primary_offset += refined.k_primary;
    id_offset += max_id + 1;
  }
  return out;
}

}  // namespace mmnoma
