// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mmnoma/beamforming.hpp"
#include "mmnoma/clustering.hpp"
#include "mmnoma/metrics.hpp"
#include "mmnoma/power.hpp"
#include "mmnoma/scheduling.hpp"

namespace mmnoma {

enum class Allocator { Fg, Equal, Oracle };

struct ScenarioConfig {
  int n_antennas = 128;
  int n_users = 16;
  double cell_radius = 40.0;
  double min_distance = 1.0;
  double d0 = 20.0;  // reference Rayleigh-distance point, meters
  double carrier_freq = 28e9;
  double element_spacing = 0.0;  // 0 -> lambda/2
  double path_loss_exp = 2.7;
  double noise_power = 1e-9;
  double total_power = 20.0;
  double epsilon = 0.95;
  bool clustering_on = true;
  BeamScheme scheme = BeamScheme::CognitiveNoma;
  Policy policy_near = Policy::Dynamic;
  Policy policy_far = Policy::Joint;
  Allocator allocator = Allocator::Fg;
  FgConfig fg;
  double leakage = 0.2;  // inter-cluster interference factor, 1 = none
  int trials = 200;
  std::uint64_t master_seed = 1;

  int cluster_k = 0;  // 0 -> ceil(U_pop / 4)
  double cluster_eps = 0.5;
  int cluster_min_pts = 2;
  bool literal_interference = true;
  BetaMode dynamic_beta = BetaMode::BeamNorm;
  BetaMode joint_beta = BetaMode::ChannelGain;
  double connectivity_threshold_db = 0.0;
  double near_power_share = -1.0;  // < 0: proportional to population sizes
  int oracle_grid_steps = 20;

  void validate() const;
};

struct TrialResult {
  int trial_index = 0;
  std::uint64_t seed = 0;
  int n_near = 0;
  int n_far = 0;
  int n_clusters = 0;
  int fg_iters_near = 0;
  int fg_iters_far = 0;
  // All policies are evaluated on the same realization so that scheme and
  // policy comparisons are paired. Empty map = population absent this trial.
  std::map<Policy, MetricSet> near_metrics;
  std::map<Policy, MetricSet> far_metrics;
};

struct StatKey {
  std::string population;  // "near" | "far"
  Policy policy;
  std::string metric;  // sum_rate | energy_efficiency | connectivity

  auto operator<=>(const StatKey&) const = default;
};

struct StatSummary {
  double mean = 0.0;
  double stddev = 0.0;  // 0 with std_defined=false when n < 2
  bool std_defined = false;
  double ci_lo = 0.0;  // 95% bootstrap CI, 2000 seeded resamples
  double ci_hi = 0.0;
  int n = 0;
};

struct CampaignStats {
  ScenarioConfig config;
  std::map<StatKey, StatSummary> summaries;
  // Per-trial series aligned by trial index; NaN marks an absent population.
  std::map<StatKey, std::vector<double>> series;
};

TrialResult run_trial(const ScenarioConfig& config, int trial_index);

CampaignStats run_campaign(const ScenarioConfig& config, int n_threads = 0);

enum class SweepAxis { NUsers, TotalPower };

struct SweepRow {
  double axis_value = 0.0;
  CampaignStats stats;
};

std::vector<SweepRow> sweep(const ScenarioConfig& config, SweepAxis axis,
                            std::vector<double> values, int n_threads = 0);

// Summary of paired per-trial deltas (series aligned by trial index; trials
// where either side is absent are skipped).
StatSummary paired_delta(const std::vector<double>& a,
                         const std::vector<double>& b, std::uint64_t seed);

std::string to_string(Policy policy);
std::string to_string(BeamScheme scheme);
std::string to_string(Allocator allocator);

}  // namespace mmnoma
