// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "mmnoma/clustering.hpp"
#include "mmnoma/rng.hpp"

using namespace mmnoma;

namespace {

UserProfile make_user(int id, FieldClass fc, double mobility = 1.0,
                      double traffic = 0.5) {
  UserProfile u;
  u.id = id;
  u.distance = 10.0;
  u.mobility_speed = mobility;
  u.traffic_weight = traffic;
  u.field_class = fc;
  return u;
}

ChannelVector unit_channel(double squared_norm, double gain = 1.0) {
  ChannelVector ch;
  ch.coeffs = Eigen::VectorXcd::Zero(2);
  ch.coeffs[0] = std::sqrt(squared_norm);
  ch.gain = gain;
  return ch;
}

// adjusted Rand index between two labelings
double ari(const std::vector<int>& a, const std::vector<int>& b) {
  const int n = static_cast<int>(a.size());
  std::map<std::pair<int, int>, int> joint;
  std::map<int, int> ca, cb;
  for (int i = 0; i < n; ++i) {
    ++joint[{a[i], b[i]}];
    ++ca[a[i]];
    ++cb[b[i]];
  }
  auto c2 = [](int m) { return m * (m - 1) / 2.0; };
  double sij = 0.0, sa = 0.0, sb = 0.0;
  for (auto& [k, v] : joint) sij += c2(v);
  for (auto& [k, v] : ca) sa += c2(v);
  for (auto& [k, v] : cb) sb += c2(v);
  const double expected = sa * sb / c2(n);
  const double max_idx = 0.5 * (sa + sb);
  return (sij - expected) / (max_idx - expected);
}

}  // namespace

TEST_CASE("build_features standardization") {
  SUBCASE("identical users map to zeros") {
    std::vector<UserProfile> users = {make_user(0, FieldClass::Near),
                                      make_user(1, FieldClass::Near),
                                      make_user(2, FieldClass::Near)};
    std::vector<ChannelVector> ch = {unit_channel(4.0), unit_channel(4.0),
                                     unit_channel(4.0)};
    const auto f = build_features(users, ch);
    for (const auto& x : f) {
      CHECK(x.channel_gain_db == 0.0);
      CHECK(x.mobility_speed == 0.0);
      CHECK(x.traffic_weight == 0.0);
    }
  }
  SUBCASE("two users, 10 dB apart, standardize to -1/+1") {
    std::vector<UserProfile> users = {make_user(0, FieldClass::Near),
                                      make_user(1, FieldClass::Near)};
    std::vector<ChannelVector> ch = {unit_channel(10.0), unit_channel(100.0)};
    const auto f = build_features(users, ch);
    CHECK(f[0].channel_gain_db == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(f[1].channel_gain_db == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("far users fold the path gain into the dB feature") {
    std::vector<UserProfile> users = {make_user(0, FieldClass::Far),
                                      make_user(1, FieldClass::Far)};
    // equal fading norms; the path gains alone must separate the features
    std::vector<ChannelVector> ch = {unit_channel(4.0, 1e-2),
                                     unit_channel(4.0, 1e-4)};
    const auto f = build_features(users, ch);
    CHECK(f[0].channel_gain_db == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(f[1].channel_gain_db == doctest::Approx(-1.0).epsilon(1e-9));
  }
}

TEST_CASE("spectral_cluster degenerate k") {
  std::vector<UserFeatures> f(5);
  for (int i = 0; i < 5; ++i) f[i] = {static_cast<double>(i), 0.0, 0.0};

  const auto one = spectral_cluster(f, 1, 3);
  CHECK(std::set<int>(one.begin(), one.end()).size() == 1);

  const auto each = spectral_cluster(f, 5, 3);
  CHECK(std::set<int>(each.begin(), each.end()).size() == 5);
}

TEST_CASE("spectral_cluster recovers well-separated blobs") {
  RandomStream rng(41);
  std::vector<UserFeatures> f;
  std::vector<int> truth;
  for (int i = 0; i < 12; ++i) {
    const int blob = i % 2;
    const double center = blob == 0 ? -10.0 : 10.0;
    f.push_back({center + 0.1 * rng.normal(), 0.1 * rng.normal(),
                 0.1 * rng.normal()});
    truth.push_back(blob);
  }
  const auto labels = spectral_cluster(f, 2, 7);
  CHECK(ari(labels, truth) == doctest::Approx(1.0));

  // determinism
  const auto again = spectral_cluster(f, 2, 7);
  CHECK(labels == again);
}

TEST_CASE("dbscan_refine traces") {
  SUBCASE("min_pts=1 leaves no noise") {
    std::vector<UserFeatures> f = {
        {0.0, 0, 0}, {10.0, 0, 0}, {20.0, 0, 0}};
    std::vector<int> primary(3, 0);
    const auto a = dbscan_refine(primary, f, 0.5, 1);
    CHECK(a.n_clusters() == 3);  // far apart: each its own core singleton
    std::set<int> seen(a.labels.begin(), a.labels.end());
    CHECK(seen.size() == 3);
  }
  SUBCASE("triple plus outlier") {
    std::vector<UserFeatures> f = {
        {0.0, 0, 0}, {0.01, 0, 0}, {0.02, 0, 0}, {50.0, 0, 0}};
    std::vector<int> primary(4, 0);
    const auto a = dbscan_refine(primary, f, 0.5, 2);
    CHECK(a.labels[0] == a.labels[1]);
    CHECK(a.labels[1] == a.labels[2]);
    CHECK(a.labels[3] != a.labels[0]);  // noise kept as a singleton
    CHECK(a.n_clusters() == 2);
  }
  SUBCASE("partition property on random input") {
    RandomStream rng(42);
    std::vector<UserFeatures> f;
    std::vector<int> primary;
    for (int i = 0; i < 40; ++i) {
      f.push_back({rng.normal(), rng.normal(), rng.normal()});
      primary.push_back(static_cast<int>(rng.next_u64() % 3));
    }
    const auto a = dbscan_refine(primary, f, 0.7, 2);
    REQUIRE(a.labels.size() == 40);
    std::map<int, int> sizes;
    for (int l : a.labels) ++sizes[l];
    int total = 0;
    for (auto& [l, s] : sizes) {
      CHECK(s > 0);
      total += s;
    }
    CHECK(total == 40);
  }
}

TEST_CASE("hybrid_cluster partition, isolation, determinism") {
  RandomStream rng(43);
  std::vector<UserProfile> users;
  std::vector<ChannelVector> channels;
  for (int i = 0; i < 24; ++i) {
    const auto fc = i < 10 ? FieldClass::Near : FieldClass::Far;
    users.push_back(make_user(i, fc, rng.uniform(0.0, 15.0),
                              rng.uniform(0.1, 1.0)));
    channels.push_back(unit_channel(rng.uniform(1.0, 100.0),
                                    fc == FieldClass::Far ? 1e-3 : 1.0));
  }
  const auto a = hybrid_cluster(users, channels, 0, 0.5, 2, 9);
  REQUIRE(a.labels.size() == 24);

  // no cluster mixes populations
  std::map<int, std::set<int>> pops;
  for (int i = 0; i < 24; ++i)
    pops[a.labels[i]].insert(users[i].field_class == FieldClass::Near ? 0
                                                                      : 1);
  for (auto& [l, p] : pops) CHECK(p.size() == 1);

  const auto b = hybrid_cluster(users, channels, 0, 0.5, 2, 9);
  CHECK(a.labels == b.labels);
}

TEST_CASE("hybrid_cluster separates two blobs exactly") {
  // two near-user blobs split on every feature; k=2 must recover them
  std::vector<UserProfile> users;
  std::vector<ChannelVector> channels;
  std::vector<int> truth;
  RandomStream rng(44);
  for (int i = 0; i < 16; ++i) {
    const int blob = i % 2;
    users.push_back(make_user(i, FieldClass::Near,
                              blob == 0 ? 0.0 : 14.0 + 0.1 * rng.uniform(),
                              blob == 0 ? 0.11 : 0.99));
    channels.push_back(
        unit_channel(blob == 0 ? 1.0 + 0.01 * rng.uniform() : 1000.0));
    truth.push_back(blob);
  }
  const auto a = hybrid_cluster(users, channels, 2, 5.0, 2, 3);
  CHECK(ari(a.labels, truth) == doctest::Approx(1.0));
}
