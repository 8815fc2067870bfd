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


#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nisq/cli/config.hpp"

namespace nisq::cli {

// Largest register the dense oracle accepts.
inline constexpr int kMaxOracleQubits = 10;

struct RunOptions {
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::optional<std::string> out_dir;
  bool strict_noise = false;
};

// One point of a plot series; written to trace.csv.
struct SeriesPoint {
  std::size_t task = 0;
  std::string type;
  std::string series;
  double x = 0.0;
  double y = 0.0;
};

// One extrapolation input ("input") or the extrapolated value ("estimate").
struct ExtrapolationPoint {
  std::size_t task = 0;
  std::string method;
  std::string kind;
  double rate = 0.0;
  double value = 0.0;
};

struct RunReport {
  std::string mode;  // "run" or "oracle"
  std::string config_hash;
  std::uint64_t seed = 0;
  nlohmann::json tasks = nlohmann::json::array();
  std::vector<SeriesPoint> trace;
  std::vector<ExtrapolationPoint> extrapolation;
  bool flagged = false;
  std::vector<std::string> flags;
  // Kept out of every output file so reruns stay byte-identical.
  double wall_seconds = 0.0;
};

// Seed override and --strict-noise folded into the config.
ExperimentConfig apply_options(ExperimentConfig config, const RunOptions& options);

// Register caps and strict-noise coverage, checked before anything runs.
// Throws CapacityError or std::invalid_argument.
void preflight(const ExperimentConfig& config);

RunReport run(const ExperimentConfig& config, unsigned jobs = 1);
// Dense exact answers for every declared task; N_q <= kMaxOracleQubits.
RunReport oracle(const ExperimentConfig& config);

nlohmann::json report_json(const RunReport& report);
std::string trace_csv(const RunReport& report);
std::string extrapolation_csv(const RunReport& report);
// run: results.json, trace.csv, extrapolation.csv. oracle: oracle.json and
// oracle_trace.csv next to them.
void write_outputs(const RunReport& report, const std::string& dir);

// 0, or 2 when any task flagged non-convergence.
int exit_code(const RunReport& report);

}  // namespace nisq::cli
