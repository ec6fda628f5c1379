// SPDX-License-Identifier: Apache-2.0
//
// mmnoma — batch front end for the massive MIMO-NOMA link-level simulator.
// Subcommands: run (one campaign), sweep (campaign per axis value),
// compare (paired campaigns across config variants, with delta rows).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mmnoma/report.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;  // empty = stdout
  std::string format = "csv";
  std::optional<long long> seed;
  std::optional<int> trials;
  int threads = 0;  // 0 = auto
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Path to the scenario config")
      ->required();
  cmd->add_option("--out", opts.out_path, "Output file (default: stdout)");
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->default_val("csv");
  cmd->add_option("--seed", opts.seed, "Master seed (overrides config)");
  cmd->add_option("--trials", opts.trials, "Trial count (overrides config)");
  cmd->add_option("--threads", opts.threads, "Worker threads (0 = auto)")
      ->envname("MMNOMA_THREADS");
}

mmnoma::ScenarioConfig load(const CommonOpts& opts) {
  auto cfg = mmnoma::load_config_file(opts.config_path);
  if (opts.seed) cfg.master_seed = static_cast<std::uint64_t>(*opts.seed);
  if (opts.trials) cfg.trials = *opts.trials;
  cfg.validate();
  return cfg;
}

int emit(const std::vector<mmnoma::OutputRecord>& records,
         const CommonOpts& opts) {
  const std::string text = opts.format == "jsonl" ? mmnoma::to_jsonl(records)
                                                  : mmnoma::to_csv(records);
  if (opts.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << opts.out_path << "\n";
      return 1;
    }
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"massive MIMO-NOMA downlink link-level simulator"};
  app.require_subcommand(1);

  CommonOpts run_opts, sweep_opts, cmp_opts;
  std::string axis = "n_users";
  std::string values_arg;
  std::vector<std::string> variants;

  CLI::App* run_cmd = app.add_subcommand("run", "Run a single campaign");
  add_common(run_cmd, run_opts);

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Run one campaign per axis value");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--axis", axis, "Sweep axis")
      ->check(CLI::IsMember({"n_users", "total_power"}))
      ->required();
  sweep_cmd
      ->add_option("--values", values_arg, "Comma-separated axis values")
      ->required();

  CLI::App* cmp_cmd = app.add_subcommand(
      "compare", "Paired campaigns over config variants (>= 2)");
  add_common(cmp_cmd, cmp_opts);
  cmp_cmd
      ->add_option("--variant", variants,
                   "Variant overrides 'section.key=value;...' ('none' keeps "
                   "the base config); repeat per variant")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const auto cfg = load(run_opts);
      const auto stats = mmnoma::run_campaign(cfg, run_opts.threads);
      return emit(mmnoma::records_from_campaign(stats, "none", 0.0),
                  run_opts);
    }
    if (sweep_cmd->parsed()) {
      const auto cfg = load(sweep_opts);
      std::vector<double> values;
      std::stringstream ss(values_arg);
      std::string item;
      while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
      if (values.empty()) throw std::invalid_argument("--values is empty");
      const auto rows = mmnoma::sweep(
          cfg,
          axis == "n_users" ? mmnoma::SweepAxis::NUsers
                            : mmnoma::SweepAxis::TotalPower,
          values, sweep_opts.threads);
      return emit(mmnoma::records_from_sweep(
                      rows, axis == "n_users" ? mmnoma::SweepAxis::NUsers
                                              : mmnoma::SweepAxis::TotalPower),
                  sweep_opts);
    }
    if (cmp_cmd->parsed()) {
      const auto cfg = load(cmp_opts);
      return emit(mmnoma::records_from_compare(cfg, variants,
                                               cmp_opts.threads),
                  cmp_opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
