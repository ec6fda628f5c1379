// SPDX-License-Identifier: Apache-2.0
#include <string>

#include "doctest.h"
#include "mmnoma/config.hpp"
#include "mmnoma/report.hpp"

using namespace mmnoma;

TEST_CASE("empty text yields the default config") {
  const auto cfg = parse_config_text("");
  CHECK(cfg.n_antennas == 128);
  CHECK(cfg.total_power == 20.0);
  CHECK(cfg.d0 == 20.0);
  CHECK(cfg.trials == 200);
}

TEST_CASE("sections, comments, and values parse") {
  const std::string text = R"(
# comment line
[scenario]
n_users = 24
scheme = noma
policy_near = priority
clustering = off
noise_power = 1e-6

[fg]
step_weight = 0.5

[clustering]
k = 3
)";
  const auto cfg = parse_config_text(text);
  CHECK(cfg.n_users == 24);
  CHECK(cfg.scheme == BeamScheme::NomaInspired);
  CHECK(cfg.policy_near == Policy::Priority);
  CHECK_FALSE(cfg.clustering_on);
  CHECK(cfg.noise_power == 1e-6);
  CHECK(cfg.fg.step_weight == 0.5);
  CHECK(cfg.cluster_k == 3);
}

TEST_CASE("unknown keys are rejected by name") {
  try {
    parse_config_text("[scenario]\nn_uzers = 4\n");
    FAIL("expected throw");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("n_uzers") != std::string::npos);
  }
  CHECK_THROWS(parse_config_text("[mystery]\nx = 1\n"));
  CHECK_THROWS(parse_config_text("[scenario]\nn_users = banana\n"));
}

TEST_CASE("overrides") {
  const auto base = parse_config_text("");
  const auto cfg =
      apply_overrides(base, "scenario.clustering=off;fg.tol=1e-8");
  CHECK_FALSE(cfg.clustering_on);
  CHECK(cfg.fg.tol == 1e-8);
  CHECK_THROWS(apply_overrides(base, "scenario.unknown=1"));

  // "none" marks the unmodified baseline variant
  const auto same = apply_overrides(base, "none");
  CHECK(config_fingerprint(same) == config_fingerprint(base));
}

TEST_CASE("canonical form and fingerprint are stable") {
  const auto a = parse_config_text("[scenario]\nn_users = 24\n");
  const auto b = apply_overrides(parse_config_text(""), "scenario.n_users=24");
  CHECK(canonical_config(a) == canonical_config(b));
  CHECK(config_fingerprint(a) == config_fingerprint(b));
  CHECK(config_fingerprint(a).size() == 16);

  const auto c = apply_overrides(a, "scenario.n_users=25");
  CHECK(config_fingerprint(a) != config_fingerprint(c));
}

TEST_CASE("csv header is the pinned schema") {
  CHECK(std::string(kCsvHeader) ==
        "fingerprint,axis,axis_value,population,scheme,policy,allocator,"
        "clustering,metric,mean,std,ci_lo,ci_hi,trials,seed");
}

TEST_CASE("missing file raises") {
  CHECK_THROWS(load_config_file("/nonexistent/path.ini"));
}
