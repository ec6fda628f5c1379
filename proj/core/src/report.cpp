// SPDX-License-Identifier: Apache-2.0
#include "mmnoma/report.hpp"

#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace mmnoma {
namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

OutputRecord base_record(const CampaignStats& stats, const std::string& axis,
                         double axis_value) {
  OutputRecord rec;
  rec.fingerprint = config_fingerprint(stats.config);
  rec.axis = axis;
  rec.axis_value = axis_value;
  rec.scheme = to_string(stats.config.scheme);
  rec.allocator = to_string(stats.config.allocator);
  rec.clustering = stats.config.clustering_on ? "on" : "off";
  rec.trials = stats.config.trials;
  rec.seed = stats.config.master_seed;
  return rec;
}

void append_population(std::vector<OutputRecord>& out,
                       const CampaignStats& stats, const OutputRecord& proto,
                       const std::string& population, Policy policy) {
  for (const std::string metric :
       {"sum_rate", "energy_efficiency", "connectivity"}) {
    const StatKey key{population, policy, metric};
    const auto it = stats.summaries.find(key);
    if (it == stats.summaries.end()) continue;
    OutputRecord rec = proto;
    rec.population = population;
    rec.policy = to_string(policy);
    rec.metric = metric;
    rec.mean = it->second.mean;
    rec.std_dev = it->second.stddev;
    rec.ci_lo = it->second.ci_lo;
    rec.ci_hi = it->second.ci_hi;
    out.push_back(std::move(rec));
  }
}

}  // namespace

std::vector<OutputRecord> records_from_campaign(const CampaignStats& stats,
                                                const std::string& axis,
                                                double axis_value) {
  std::vector<OutputRecord> out;
  const OutputRecord proto = base_record(stats, axis, axis_value);
  append_population(out, stats, proto, "near", stats.config.policy_near);
  append_population(out, stats, proto, "far", stats.config.policy_far);
  return out;
}

std::vector<OutputRecord> records_from_sweep(const std::vector<SweepRow>& rows,
                                             SweepAxis axis) {
  const std::string name =
      axis == SweepAxis::NUsers ? "n_users" : "total_power";
  std::vector<OutputRecord> out;
  for (const auto& row : rows) {
    auto recs = records_from_campaign(row.stats, name, row.axis_value);
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

std::vector<OutputRecord> records_from_compare(
    const ScenarioConfig& base, const std::vector<std::string>& variants,
    int n_threads) {
  if (variants.size() < 2)
    throw std::invalid_argument("compare needs at least 2 variants");
  std::vector<CampaignStats> campaigns;
  campaigns.reserve(variants.size());
  for (const auto& v : variants)
    campaigns.push_back(run_campaign(apply_overrides(base, v), n_threads));

  std::vector<OutputRecord> out;
  for (size_t v = 0; v < campaigns.size(); ++v) {
    auto recs = records_from_campaign(campaigns[v], "variant",
                                      static_cast<double>(v));
    out.insert(out.end(), recs.begin(), recs.end());
  }
  // paired per-trial deltas of each variant against variant 0
  for (size_t v = 1; v < campaigns.size(); ++v) {
    const auto& var = campaigns[v];
    const auto& ref = campaigns[0];
    const OutputRecord proto =
        base_record(var, "variant", static_cast<double>(v));
    const std::vector<std::pair<std::string, Policy>> pops = {
        {"near", var.config.policy_near}, {"far", var.config.policy_far}};
    for (const auto& [pop, policy] : pops) {
      const Policy ref_policy =
          pop == "near" ? ref.config.policy_near : ref.config.policy_far;
      for (const std::string metric :
           {"sum_rate", "energy_efficiency", "connectivity"}) {
        const auto a = var.series.find({pop, policy, metric});
        const auto b = ref.series.find({pop, ref_policy, metric});
        if (a == var.series.end() || b == ref.series.end()) continue;
        const StatSummary d =
            paired_delta(a->second, b->second, var.config.master_seed);
        OutputRecord rec = proto;
        rec.population = pop;
        rec.policy = to_string(policy);
        rec.metric = "delta_" + metric;
        rec.mean = d.mean;
        rec.std_dev = d.stddev;
        rec.ci_lo = d.ci_lo;
        rec.ci_hi = d.ci_hi;
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::string to_csv(const std::vector<OutputRecord>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : records) {
    out += r.fingerprint + ',' + r.axis + ',' + fmt(r.axis_value) + ',' +
           r.population + ',' + r.scheme + ',' + r.policy + ',' +
           r.allocator + ',' + r.clustering + ',' + r.metric + ',' +
           fmt(r.mean) + ',' + fmt(r.std_dev) + ',' + fmt(r.ci_lo) + ',' +
           fmt(r.ci_hi) + ',' + std::to_string(r.trials) + ',' +
           std::to_string(r.seed) + '\n';
  }
  return out;
}

std::string to_jsonl(const std::vector<OutputRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["fingerprint"] = r.fingerprint;
    j["axis"] = r.axis;
    j["axis_value"] = r.axis_value;
    j["population"] = r.population;
    j["scheme"] = r.scheme;
    j["policy"] = r.policy;
    j["allocator"] = r.allocator;
    j["clustering"] = r.clustering;
    j["metric"] = r.metric;
    j["mean"] = r.mean;
    j["std"] = r.std_dev;
    j["ci_lo"] = r.ci_lo;
    j["ci_hi"] = r.ci_hi;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace mmnoma
