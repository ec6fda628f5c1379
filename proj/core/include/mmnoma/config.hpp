// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "mmnoma/simulation.hpp"

namespace mmnoma {

// Flat sectioned key/value config ("[section]" headers, "key = value" lines,
// '#' comments). Unknown sections or keys are errors: silent
// misconfiguration is worse than a hard stop.
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

// Applies "section.key=value" overrides (semicolon-separated) to a config.
ScenarioConfig apply_overrides(const ScenarioConfig& base,
                               const std::string& overrides);

// Canonical text form: every key, sorted, with normalized value formatting.
std::string canonical_config(const ScenarioConfig& cfg);

// FNV-1a 64 of the canonical form, as 16 hex digits.
std::string config_fingerprint(const ScenarioConfig& cfg);

}  // namespace mmnoma
