// SPDX-License-Identifier: Apache-2.0
//
// Throughput benchmarks for the hot paths: channel generation, beam
// construction, clustering, and a full end-to-end trial.

#include <benchmark/benchmark.h>

#include <vector>

#include "mmnoma/beamforming.hpp"
#include "mmnoma/clustering.hpp"
#include "mmnoma/geometry.hpp"
#include "mmnoma/rng.hpp"
#include "mmnoma/simulation.hpp"

namespace {

using namespace mmnoma;

struct Drop {
  ArrayConfig array;
  std::vector<UserProfile> users;
  std::vector<ChannelVector> near_channels;
  std::vector<ChannelVector> far_channels;
};

Drop make_drop(int n_antennas, int n_users, std::uint64_t seed) {
  Drop d;
  d.array = ArrayConfig::make(n_antennas, 28e9);
  RandomStream rng(seed);
  RandomStream drop_rng = rng.child(1);
  RandomStream chan_rng = rng.child(2);
  d.users = drop_users(n_users, 40.0, 1.0, d.array, 20.0, drop_rng);
  for (const auto& u : d.users) {
    if (u.field_class == FieldClass::Near) {
      d.near_channels.push_back(near_field_channel(u, d.array));
    } else {
      d.far_channels.push_back(far_field_channel(u, d.array, 2.7, chan_rng));
    }
  }
  return d;
}

void BM_ChannelDrop(benchmark::State& state) {
  const int n_users = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto d = make_drop(128, n_users, seed++);
    benchmark::DoNotOptimize(d.near_channels);
    benchmark::DoNotOptimize(d.far_channels);
  }
  state.SetItemsProcessed(state.iterations() * n_users);
}
BENCHMARK(BM_ChannelDrop)->Arg(16)->Arg(64);

void BM_NomaBeams(benchmark::State& state) {
  const auto d = make_drop(128, static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    auto beams = noma_beams(d.near_channels, d.far_channels, 1e-9, 0.95);
    benchmark::DoNotOptimize(beams);
  }
}
BENCHMARK(BM_NomaBeams)->Arg(16)->Arg(32)->Arg(64);

void BM_CognitiveBeams(benchmark::State& state) {
  const auto d = make_drop(128, static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    auto beams = cognitive_beams(d.near_channels, d.far_channels, 1e-9, 0.95);
    benchmark::DoNotOptimize(beams);
  }
}
BENCHMARK(BM_CognitiveBeams)->Arg(16)->Arg(32)->Arg(64);

void BM_HybridCluster(benchmark::State& state) {
  const auto d = make_drop(128, static_cast<int>(state.range(0)), 7);
  std::vector<ChannelVector> channels = d.near_channels;
  channels.insert(channels.end(), d.far_channels.begin(),
                  d.far_channels.end());
  // Channels above are grouped near-then-far; rebuild matching profiles.
  std::vector<UserProfile> users;
  for (const auto& u : d.users)
    if (u.field_class == FieldClass::Near) users.push_back(u);
  for (const auto& u : d.users)
    if (u.field_class == FieldClass::Far) users.push_back(u);
  for (auto _ : state) {
    auto result = hybrid_cluster(users, channels, 0, 0.5, 2, 99);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_HybridCluster)->Arg(32)->Arg(64);

void BM_RunTrial(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.n_antennas = 128;
  cfg.n_users = static_cast<int>(state.range(0));
  cfg.master_seed = 6061;
  int trial = 0;
  for (auto _ : state) {
    auto r = run_trial(cfg, trial++ % 64);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_users);
}
BENCHMARK(BM_RunTrial)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
