// SPDX-License-Identifier: Apache-2.0
#include "mmnoma/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mmnoma/rng.hpp"

namespace mmnoma {

namespace {
constexpr std::uint64_t kDropTag = 1;
constexpr std::uint64_t kChannelTag = 2;
constexpr std::uint64_t kBeamTag = 3;
constexpr std::uint64_t kClusterTag = 4;
constexpr std::uint64_t kBootstrapTag = 0xb007;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

void ScenarioConfig::validate() const {
  if (n_antennas < 1) throw std::invalid_argument("n_antennas must be >= 1");
  if (n_users < 1) throw std::invalid_argument("n_users must be >= 1");
  if (cell_radius <= 0.0 || min_distance <= 0.0 ||
      min_distance >= cell_radius)
    throw std::invalid_argument("need 0 < min_distance < cell_radius");
  if (d0 <= 0.0) throw std::invalid_argument("d0 must be > 0");
  if (carrier_freq <= 0.0) throw std::invalid_argument("carrier_freq > 0");
  if (path_loss_exp <= 0.0) throw std::invalid_argument("path_loss_exp > 0");
  if (noise_power <= 0.0) throw std::invalid_argument("noise_power > 0");
  if (total_power <= 0.0) throw std::invalid_argument("total_power > 0");
  if (epsilon <= 0.0 || epsilon > 1.0)
    throw std::invalid_argument("epsilon must be in (0, 1]");
  if (leakage < 0.0 || leakage > 1.0)
    throw std::invalid_argument("leakage must be in [0, 1]");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cluster_eps <= 0.0) throw std::invalid_argument("cluster_eps > 0");
  if (cluster_min_pts < 1) throw std::invalid_argument("cluster_min_pts >= 1");
  if (near_power_share > 1.0)
    throw std::invalid_argument("near_power_share must be <= 1");
  fg.validate();
}

namespace {

PowerVector allocate_population(const ScenarioConfig& cfg, LinkState& state,
                                bool far_pop, Policy policy, double budget,
                                int* fg_iters) {
  const int u = far_pop ? state.u_far() : state.u_near();
  auto rate_fn = [&](const Eigen::VectorXd& p) {
    if (far_pop)
      state.far_powers = p;
    else
      state.near_powers = p;
    return per_user_rates(evaluate_policy(state, policy));
  };
  switch (cfg.allocator) {
    case Allocator::Equal:
      return equal_allocate(u, budget);
    case Allocator::Oracle:
      return brute_force_optimal(rate_fn, budget, u, cfg.oracle_grid_steps);
    case Allocator::Fg: {
      FgResult res = fg_allocate(rate_fn, budget, u, cfg.fg);
      if (fg_iters) *fg_iters = res.iterations;
      return res.allocation;
    }
  }
  throw std::logic_error("unknown allocator");
}

}  // namespace

TrialResult run_trial(const ScenarioConfig& cfg, int trial_index) {
  cfg.validate();
  TrialResult result;
  result.trial_index = trial_index;

  RandomStream root =
      RandomStream(cfg.master_seed).child(static_cast<std::uint64_t>(trial_index));
  result.seed = root.next_u64();
  // purpose-tagged substreams: drops and channels are identical across
  // schemes/policies/clustering variants sharing the master seed
  RandomStream drop_rng = root.child(kDropTag);
  RandomStream channel_rng = root.child(kChannelTag);
  RandomStream beam_rng = root.child(kBeamTag);
  RandomStream cluster_rng = root.child(kClusterTag);

  const ArrayConfig array = ArrayConfig::make(
      cfg.n_antennas, cfg.carrier_freq, cfg.element_spacing);
  const auto users =
      drop_users(cfg.n_users, cfg.cell_radius, cfg.min_distance, array,
                 cfg.d0, drop_rng);

  std::vector<int> near_idx, far_idx;
  std::vector<ChannelVector> all_channels(users.size());
  std::vector<ChannelVector> near_ch, far_ch;
  for (size_t i = 0; i < users.size(); ++i) {
    if (users[i].field_class == FieldClass::Near) {
      all_channels[i] = near_field_channel(users[i], array);
      near_idx.push_back(static_cast<int>(i));
      near_ch.push_back(all_channels[i]);
    } else {
      all_channels[i] =
          far_field_channel(users[i], array, cfg.path_loss_exp, channel_rng);
      far_idx.push_back(static_cast<int>(i));
      far_ch.push_back(all_channels[i]);
    }
  }
  const int u_near = static_cast<int>(near_idx.size());
  const int u_far = static_cast<int>(far_idx.size());
  result.n_near = u_near;
  result.n_far = u_far;

  // clustering (or the single-cluster-per-population baseline)
  std::vector<int> near_labels, far_labels;
  IndexGroups near_groups;
  if (cfg.clustering_on) {
    const auto assignment =
        hybrid_cluster(users, all_channels, cfg.cluster_k, cfg.cluster_eps,
                       cfg.cluster_min_pts, cluster_rng.next_u64());
    result.n_clusters = assignment.n_clusters();
    near_labels.reserve(u_near);
    for (int i : near_idx) near_labels.push_back(assignment.labels[i]);
    far_labels.reserve(u_far);
    for (int i : far_idx) far_labels.push_back(assignment.labels[i]);
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < u_near; ++i) groups[near_labels[i]].push_back(i);
    for (auto& [label, members] : groups)
      near_groups.push_back(std::move(members));
  } else {
    result.n_clusters = (u_near > 0 ? 1 : 0) + (u_far > 0 ? 1 : 0);
  }

  BeamSet beams;
  switch (cfg.scheme) {
    case BeamScheme::NomaInspired:
      beams = noma_beams(near_ch, far_ch, cfg.noise_power, cfg.epsilon,
                         near_groups);
      break;
    case BeamScheme::CognitiveNoma:
      beams = cognitive_beams(near_ch, far_ch, cfg.noise_power, cfg.epsilon,
                              near_groups);
      break;
    case BeamScheme::Random:
      beams = random_beams(u_near, u_far, cfg.n_antennas, beam_rng);
      break;
  }

  LinkState state;
  state.near_channels.resize(cfg.n_antennas, u_near);
  for (int i = 0; i < u_near; ++i)
    state.near_channels.col(i) = near_ch[i].coeffs;
  state.far_channels.resize(cfg.n_antennas, u_far);
  state.far_path_gain.resize(u_far);
  for (int i = 0; i < u_far; ++i) {
    state.far_channels.col(i) = far_ch[i].coeffs;
    state.far_path_gain[i] = far_ch[i].gain;
  }
  state.beams = std::move(beams);
  state.noise_power = cfg.noise_power;
  state.near_labels = std::move(near_labels);
  state.far_labels = std::move(far_labels);
  state.leakage = cfg.leakage;
  state.literal_interference = cfg.literal_interference;
  state.dynamic_beta = cfg.dynamic_beta;
  state.joint_beta = cfg.joint_beta;

  // near/far budget split
  double near_budget;
  if (cfg.near_power_share >= 0.0)
    near_budget = cfg.total_power * cfg.near_power_share;
  else
    near_budget = cfg.total_power * u_near / cfg.n_users;
  if (u_near == 0) near_budget = 0.0;
  if (u_far == 0) near_budget = cfg.total_power;
  const double far_budget = cfg.total_power - near_budget;

  state.near_powers = Eigen::VectorXd::Constant(
      u_near, u_near > 0 ? near_budget / u_near : 0.0);
  state.far_powers = Eigen::VectorXd::Constant(
      u_far, u_far > 0 ? far_budget / u_far : 0.0);

  PowerVector near_power{state.near_powers, std::max(near_budget, 1e-300)};
  PowerVector far_power{state.far_powers, std::max(far_budget, 1e-300)};
  if (u_near > 0 && near_budget > 0.0) {
    near_power = allocate_population(cfg, state, false, cfg.policy_near,
                                     near_budget, &result.fg_iters_near);
    state.near_powers = near_power.powers;
  }
  if (u_far > 0 && far_budget > 0.0) {
    far_power = allocate_population(cfg, state, true, cfg.policy_far,
                                    far_budget, &result.fg_iters_far);
    state.far_powers = far_power.powers;
  }

  if (u_near > 0 && near_power.powers.sum() > 0.0) {
    for (Policy p : {Policy::BaseNear, Policy::Priority, Policy::Dynamic})
      result.near_metrics[p] = compute_metrics(
          evaluate_policy(state, p), near_power,
          cfg.connectivity_threshold_db);
  }
  if (u_far > 0 && far_power.powers.sum() > 0.0) {
    for (Policy p : {Policy::BaseFar, Policy::Fair, Policy::Joint})
      result.far_metrics[p] = compute_metrics(
          evaluate_policy(state, p), far_power,
          cfg.connectivity_threshold_db);
  }
  return result;
}

namespace {

StatSummary summarize(const std::vector<double>& values, std::uint64_t seed) {
  std::vector<double> clean;
  clean.reserve(values.size());
  for (double v : values)
    if (std::isfinite(v)) clean.push_back(v);

  StatSummary s;
  s.n = static_cast<int>(clean.size());
  if (clean.empty()) return s;

  double sum = 0.0;
  for (double v : clean) sum += v;
  s.mean = sum / s.n;
  if (s.n >= 2) {
    double sq = 0.0;
    for (double v : clean) sq += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(sq / (s.n - 1));
    s.std_defined = true;
  }

  constexpr int kResamples = 2000;
  RandomStream rng(RandomStream::mix(seed ^ kBootstrapTag));
  std::vector<double> means(kResamples);
  for (int r = 0; r < kResamples; ++r) {
    double acc = 0.0;
    for (int i = 0; i < s.n; ++i)
      acc += clean[rng.next_u64() % clean.size()];
    means[r] = acc / s.n;
  }
  std::sort(means.begin(), means.end());
  s.ci_lo = means[static_cast<int>(0.025 * (kResamples - 1))];
  s.ci_hi = means[static_cast<int>(0.975 * (kResamples - 1))];
  // percentile CIs can exclude the point mean only through resampling noise
  s.ci_lo = std::min(s.ci_lo, s.mean);
  s.ci_hi = std::max(s.ci_hi, s.mean);
  return s;
}

double metric_value(const MetricSet& m, const std::string& name) {
  if (name == "sum_rate") return m.sum_rate;
  if (name == "energy_efficiency") return m.energy_efficiency;
  if (name == "connectivity") return m.connectivity;
  throw std::logic_error("unknown metric " + name);
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {
      "sum_rate", "energy_efficiency", "connectivity"};
  return names;
}

}  // namespace

CampaignStats run_campaign(const ScenarioConfig& cfg, int n_threads) {
  cfg.validate();
  std::vector<TrialResult> trials(cfg.trials);

  int workers = n_threads > 0
                    ? n_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, cfg.trials));

  if (workers == 1) {
    for (int t = 0; t < cfg.trials; ++t) trials[t] = run_trial(cfg, t);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&]() {
      for (int t = next.fetch_add(1); t < cfg.trials;
           t = next.fetch_add(1)) {
        try {
          trials[t] = run_trial(cfg, t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  CampaignStats stats;
  stats.config = cfg;
  const std::vector<std::pair<std::string, std::vector<Policy>>> pops = {
      {"near", {Policy::BaseNear, Policy::Priority, Policy::Dynamic}},
      {"far", {Policy::BaseFar, Policy::Fair, Policy::Joint}}};
  for (const auto& [pop, policies] : pops) {
    for (Policy policy : policies) {
      for (const auto& metric : metric_names()) {
        StatKey key{pop, policy, metric};
        std::vector<double> series(cfg.trials, kNaN);
        for (int t = 0; t < cfg.trials; ++t) {
          const auto& map =
              pop == "near" ? trials[t].near_metrics : trials[t].far_metrics;
          auto it = map.find(policy);
          if (it != map.end()) series[t] = metric_value(it->second, metric);
        }
        stats.summaries[key] = summarize(series, cfg.master_seed);
        stats.series[key] = std::move(series);
      }
    }
  }
  return stats;
}

std::vector<SweepRow> sweep(const ScenarioConfig& cfg, SweepAxis axis,
                            std::vector<double> values, int n_threads) {
  std::sort(values.begin(), values.end());
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    ScenarioConfig c = cfg;
    c.master_seed = cfg.master_seed + i;  // shared seed, per-value offset
    if (axis == SweepAxis::NUsers)
      c.n_users = static_cast<int>(std::llround(values[i]));
    else
      c.total_power = values[i];
    rows.push_back({values[i], run_campaign(c, n_threads)});
  }
  return rows;
}

StatSummary paired_delta(const std::vector<double>& a,
                         const std::vector<double>& b, std::uint64_t seed) {
  if (a.size() != b.size())
    throw std::invalid_argument("paired_delta: series length mismatch");
  std::vector<double> deltas;
  deltas.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    if (std::isfinite(a[i]) && std::isfinite(b[i]))
      deltas.push_back(a[i] - b[i]);
    else
      deltas.push_back(kNaN);
  return summarize(deltas, seed);
}

std::string to_string(Policy policy) {
  switch (policy) {
    case Policy::BaseNear: return "base_near";
    case Policy::BaseFar: return "base_far";
    case Policy::Priority: return "priority";
    case Policy::Dynamic: return "dynamic";
    case Policy::Fair: return "fair";
    case Policy::Joint: return "joint";
  }
  return "?";
}

std::string to_string(BeamScheme scheme) {
  switch (scheme) {
    case BeamScheme::NomaInspired: return "noma";
    case BeamScheme::CognitiveNoma: return "cognitive";
    case BeamScheme::Random: return "random";
  }
  return "?";
}

std::string to_string(Allocator allocator) {
  switch (allocator) {
    case Allocator::Fg: return "fg";
    case Allocator::Equal: return "equal";
    case Allocator::Oracle: return "oracle";
  }
  return "?";
}

}  // namespace mmnoma
