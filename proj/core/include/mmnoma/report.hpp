// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "mmnoma/config.hpp"
#include "mmnoma/simulation.hpp"

namespace mmnoma {

// One flattened result row: (axis value x population x policy x metric).
struct OutputRecord {
  std::string fingerprint;
  std::string axis;  // "none" | "n_users" | "total_power" | "variant"
  double axis_value = 0.0;
  std::string population;
  std::string scheme;
  std::string policy;
  std::string allocator;
  std::string clustering;  // on | off
  std::string metric;
  double mean = 0.0;
  double std_dev = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kCsvHeader =
    "fingerprint,axis,axis_value,population,scheme,policy,allocator,"
    "clustering,metric,mean,std,ci_lo,ci_hi,trials,seed";

// Rows for the configured policy pair of one finished campaign.
std::vector<OutputRecord> records_from_campaign(const CampaignStats& stats,
                                                const std::string& axis,
                                                double axis_value);

std::vector<OutputRecord> records_from_sweep(const std::vector<SweepRow>& rows,
                                             SweepAxis axis);

// Paired comparison: one campaign per override set on shared seeds; absolute
// rows per variant plus per-trial paired delta rows against variant 0.
std::vector<OutputRecord> records_from_compare(
    const ScenarioConfig& base, const std::vector<std::string>& variants,
    int n_threads = 0);

std::string to_csv(const std::vector<OutputRecord>& records);
std::string to_jsonl(const std::vector<OutputRecord>& records);

}  // namespace mmnoma
