// Copyright 2026 The nisqlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// nisqlab run <config> | nisqlab oracle <config>

#include <CLI11.hpp>

#include <cstdio>
#include <exception>

#include "nisq/cli/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Config-driven runner for variational algorithms and error mitigation"};
  app.require_subcommand(1);

  std::string config_path;
  nisq::cli::RunOptions options;
  std::uint64_t seed = 0;
  std::string out_dir;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "Experiment config (YAML or JSON)")->required();
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--jobs", options.jobs, "Worker cap")->check(CLI::PositiveNumber);
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_flag("--strict-noise", options.strict_noise, "Reject gates without a noise channel");
  };
  CLI::App* run_cmd = app.add_subcommand("run", "Run every task in the config");
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Dense exact answers for every task (N_q <= 10)");
  add_common(run_cmd);
  add_common(oracle_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 returns 0 for --help; every other parse failure is an error.
    return app.exit(e) == 0 ? 0 : 1;
  }

  const CLI::App* active = run_cmd->parsed() ? run_cmd : oracle_cmd;
  if (active->count("--seed")) options.seed = seed;
  if (active->count("--out")) options.out_dir = out_dir;

  try {
    const nisq::cli::ExperimentConfig config =
        nisq::cli::apply_options(nisq::cli::load_config(config_path), options);
    const nisq::cli::RunReport report =
        run_cmd->parsed() ? nisq::cli::run(config, options.jobs) : nisq::cli::oracle(config);
    nisq::cli::write_outputs(report, config.out_dir);
    for (const auto& f : report.flags) std::fprintf(stderr, "nisqlab: flagged: %s\n", f.c_str());
    std::fprintf(stderr, "nisqlab: %s finished in %.3f s (config %s, seed %llu)\n", report.mode.c_str(),
                 report.wall_seconds, report.config_hash.c_str(), static_cast<unsigned long long>(report.seed));
    return nisq::cli::exit_code(report);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "nisqlab: error: %s\n", e.what());
    return 1;
  }
}
