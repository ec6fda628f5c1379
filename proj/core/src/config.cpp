// SPDX-License-Identifier: Apache-2.0
#include "mmnoma/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace mmnoma {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& v) {
  size_t pos = 0;
  double out;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key);
  }
  if (pos != v.size())
    throw std::invalid_argument("config: bad numeric value for " + key);
  return out;
}

long long parse_int(const std::string& key, const std::string& v) {
  size_t pos = 0;
  long long out;
  try {
    out = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer value for " + key);
  }
  if (pos != v.size())
    throw std::invalid_argument("config: bad integer value for " + key);
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw std::invalid_argument("config: bad boolean for " + key +
                              " (use on/off)");
}

BeamScheme parse_scheme(const std::string& v) {
  if (v == "noma") return BeamScheme::NomaInspired;
  if (v == "cognitive") return BeamScheme::CognitiveNoma;
  if (v == "random") return BeamScheme::Random;
  throw std::invalid_argument("config: scheme must be noma|cognitive|random");
}

Policy parse_policy(const std::string& key, const std::string& v) {
  if (v == "base_near") return Policy::BaseNear;
  if (v == "base_far") return Policy::BaseFar;
  if (v == "priority") return Policy::Priority;
  if (v == "dynamic") return Policy::Dynamic;
  if (v == "fair") return Policy::Fair;
  if (v == "joint") return Policy::Joint;
  throw std::invalid_argument("config: bad policy for " + key);
}

Allocator parse_allocator(const std::string& v) {
  if (v == "fg") return Allocator::Fg;
  if (v == "equal") return Allocator::Equal;
  if (v == "oracle") return Allocator::Oracle;
  throw std::invalid_argument("config: allocator must be fg|equal|oracle");
}

BetaMode parse_beta(const std::string& key, const std::string& v) {
  if (v == "beam_norm") return BetaMode::BeamNorm;
  if (v == "channel_gain") return BetaMode::ChannelGain;
  throw std::invalid_argument("config: " + key +
                              " must be beam_norm|channel_gain");
}

std::string beta_name(BetaMode m) {
  return m == BetaMode::BeamNorm ? "beam_norm" : "channel_gain";
}

struct KeyEntry {
  std::string section;
  std::string key;
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

const std::vector<KeyEntry>& key_table() {
  static const std::vector<KeyEntry> table = [] {
    std::vector<KeyEntry> t;
    auto add = [&](std::string sec, std::string key, auto set, auto get) {
      t.push_back({std::move(sec), std::move(key), set, get});
    };
    using C = ScenarioConfig;
    add("scenario", "n_antennas",
        [](C& c, const std::string& v) {
          c.n_antennas = static_cast<int>(parse_int("n_antennas", v));
        },
        [](const C& c) { return std::to_string(c.n_antennas); });
    add("scenario", "n_users",
        [](C& c, const std::string& v) {
          c.n_users = static_cast<int>(parse_int("n_users", v));
        },
        [](const C& c) { return std::to_string(c.n_users); });
    add("scenario", "cell_radius",
        [](C& c, const std::string& v) {
          c.cell_radius = parse_double("cell_radius", v);
        },
        [](const C& c) { return fmt_double(c.cell_radius); });
    add("scenario", "min_distance",
        [](C& c, const std::string& v) {
          c.min_distance = parse_double("min_distance", v);
        },
        [](const C& c) { return fmt_double(c.min_distance); });
    add("scenario", "d0",
        [](C& c, const std::string& v) { c.d0 = parse_double("d0", v); },
        [](const C& c) { return fmt_double(c.d0); });
    add("scenario", "carrier_freq",
        [](C& c, const std::string& v) {
          c.carrier_freq = parse_double("carrier_freq", v);
        },
        [](const C& c) { return fmt_double(c.carrier_freq); });
    add("scenario", "element_spacing",
        [](C& c, const std::string& v) {
          c.element_spacing = parse_double("element_spacing", v);
        },
        [](const C& c) { return fmt_double(c.element_spacing); });
    add("scenario", "path_loss_exp",
        [](C& c, const std::string& v) {
          c.path_loss_exp = parse_double("path_loss_exp", v);
        },
        [](const C& c) { return fmt_double(c.path_loss_exp); });
    add("scenario", "noise_power",
        [](C& c, const std::string& v) {
          c.noise_power = parse_double("noise_power", v);
        },
        [](const C& c) { return fmt_double(c.noise_power); });
    add("scenario", "total_power",
        [](C& c, const std::string& v) {
          c.total_power = parse_double("total_power", v);
        },
        [](const C& c) { return fmt_double(c.total_power); });
    add("scenario", "epsilon",
        [](C& c, const std::string& v) {
          c.epsilon = parse_double("epsilon", v);
        },
        [](const C& c) { return fmt_double(c.epsilon); });
    add("scenario", "clustering",
        [](C& c, const std::string& v) {
          c.clustering_on = parse_bool("clustering", v);
        },
        [](const C& c) { return c.clustering_on ? std::string("on")
                                                : std::string("off"); });
    add("scenario", "scheme",
        [](C& c, const std::string& v) { c.scheme = parse_scheme(v); },
        [](const C& c) { return to_string(c.scheme); });
    add("scenario", "policy_near",
        [](C& c, const std::string& v) {
          c.policy_near = parse_policy("policy_near", v);
        },
        [](const C& c) { return to_string(c.policy_near); });
    add("scenario", "policy_far",
        [](C& c, const std::string& v) {
          c.policy_far = parse_policy("policy_far", v);
        },
        [](const C& c) { return to_string(c.policy_far); });
    add("scenario", "allocator",
        [](C& c, const std::string& v) { c.allocator = parse_allocator(v); },
        [](const C& c) { return to_string(c.allocator); });
    add("scenario", "leakage",
        [](C& c, const std::string& v) {
          c.leakage = parse_double("leakage", v);
        },
        [](const C& c) { return fmt_double(c.leakage); });
    add("scenario", "trials",
        [](C& c, const std::string& v) {
          c.trials = static_cast<int>(parse_int("trials", v));
        },
        [](const C& c) { return std::to_string(c.trials); });
    add("scenario", "master_seed",
        [](C& c, const std::string& v) {
          c.master_seed =
              static_cast<std::uint64_t>(parse_int("master_seed", v));
        },
        [](const C& c) { return std::to_string(c.master_seed); });
    add("scenario", "near_power_share",
        [](C& c, const std::string& v) {
          c.near_power_share = parse_double("near_power_share", v);
        },
        [](const C& c) { return fmt_double(c.near_power_share); });
    add("scenario", "oracle_grid_steps",
        [](C& c, const std::string& v) {
          c.oracle_grid_steps =
              static_cast<int>(parse_int("oracle_grid_steps", v));
        },
        [](const C& c) { return std::to_string(c.oracle_grid_steps); });
    add("clustering", "k",
        [](C& c, const std::string& v) {
          c.cluster_k = static_cast<int>(parse_int("k", v));
        },
        [](const C& c) { return std::to_string(c.cluster_k); });
    add("clustering", "eps",
        [](C& c, const std::string& v) {
          c.cluster_eps = parse_double("eps", v);
        },
        [](const C& c) { return fmt_double(c.cluster_eps); });
    add("clustering", "min_pts",
        [](C& c, const std::string& v) {
          c.cluster_min_pts = static_cast<int>(parse_int("min_pts", v));
        },
        [](const C& c) { return std::to_string(c.cluster_min_pts); });
    add("fg", "step_weight",
        [](C& c, const std::string& v) {
          c.fg.step_weight = parse_double("step_weight", v);
        },
        [](const C& c) { return fmt_double(c.fg.step_weight); });
    add("fg", "max_iters",
        [](C& c, const std::string& v) {
          c.fg.max_iters = static_cast<int>(parse_int("max_iters", v));
        },
        [](const C& c) { return std::to_string(c.fg.max_iters); });
    add("fg", "tol",
        [](C& c, const std::string& v) {
          c.fg.tol = parse_double("tol", v);
        },
        [](const C& c) { return fmt_double(c.fg.tol); });
    add("scheduling", "literal_interference",
        [](C& c, const std::string& v) {
          c.literal_interference = parse_bool("literal_interference", v);
        },
        [](const C& c) {
          return c.literal_interference ? std::string("on")
                                        : std::string("off");
        });
    add("scheduling", "dynamic_beta",
        [](C& c, const std::string& v) {
          c.dynamic_beta = parse_beta("dynamic_beta", v);
        },
        [](const C& c) { return beta_name(c.dynamic_beta); });
    add("scheduling", "joint_beta",
        [](C& c, const std::string& v) {
          c.joint_beta = parse_beta("joint_beta", v);
        },
        [](const C& c) { return beta_name(c.joint_beta); });
    add("metrics", "connectivity_threshold_db",
        [](C& c, const std::string& v) {
          c.connectivity_threshold_db =
              parse_double("connectivity_threshold_db", v);
        },
        [](const C& c) { return fmt_double(c.connectivity_threshold_db); });
    return t;
  }();
  return table;
}

const KeyEntry* find_entry(const std::string& section,
                           const std::string& key) {
  for (const auto& e : key_table())
    if (e.section == section && e.key == key) return &e;
  return nullptr;
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::vector<std::string> unknown;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config: malformed section at line " +
                                    std::to_string(line_no));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value at line " +
                                  std::to_string(line_no));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const KeyEntry* entry = find_entry(section, key);
    if (!entry) {
      unknown.push_back(section.empty() ? key : section + "." + key);
      continue;
    }
    entry->set(cfg, value);
  }
  if (!unknown.empty()) {
    std::string msg = "config: unknown keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw std::invalid_argument(msg);
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ScenarioConfig apply_overrides(const ScenarioConfig& base,
                               const std::string& overrides) {
  ScenarioConfig cfg = base;
  std::istringstream in(overrides);
  std::string item;
  while (std::getline(in, item, ';')) {
    item = trim(item);
    if (item.empty() || item == "none" || item == "base") continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("override must be section.key=value: " +
                                  item);
    std::string path = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    const auto dot = path.find('.');
    if (dot == std::string::npos)
      throw std::invalid_argument("override must be section.key=value: " +
                                  item);
    const KeyEntry* entry =
        find_entry(path.substr(0, dot), path.substr(dot + 1));
    if (!entry)
      throw std::invalid_argument("override: unknown key " + path);
    entry->set(cfg, value);
  }
  cfg.validate();
  return cfg;
}

std::string canonical_config(const ScenarioConfig& cfg) {
  std::vector<std::string> lines;
  for (const auto& e : key_table())
    lines.push_back(e.section + "." + e.key + "=" + e.get(cfg));
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

std::string config_fingerprint(const ScenarioConfig& cfg) {
  const std::string canon = canonical_config(cfg);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canon) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace mmnoma
