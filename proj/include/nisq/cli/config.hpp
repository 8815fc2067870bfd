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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nisq/core/pauli.hpp"
#include "nisq/noise/noise_model.hpp"
#include "nisq/qem/combine.hpp"
#include "nisq/vqo/optimizer.hpp"

namespace nisq::cli {

// Schema violation; the message carries "<file>:<line>:<column>: <field>: ...".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exactly one Hamiltonian source. File sources are read at load time, so the
// config only ever holds text.
struct ProblemConfig {
  enum class Source { Model, Pauli, Dimacs };
  Source source = Source::Model;
  std::string model = "transverse-ising";
  int n = 2;
  double h = 1.0;
  double lambda = 0.5;
  std::string text;  // PauliSum lines or DIMACS
};

struct AnsatzConfig {
  std::string templ = "hardware-efficient";
  int depth = 1;
};

struct ChannelSpec {
  std::string channel;
  double p = 0.0;
  int arity = 1;
};

struct NoiseConfig {
  std::optional<ChannelSpec> one_qubit;
  std::optional<ChannelSpec> two_qubit;
  std::map<std::string, ChannelSpec> gates;
  // Continuous single-qubit noise after every gate: jump operators
  // sqrt(rate) sigma^- and sqrt(rate) Z in the factor-2 convention.
  double amplitude_damping = 0.0;
  double dephasing = 0.0;
  double duration = 0.0;
  double dt = 0.0;
  std::vector<double> reduction;
  bool strict = false;
};

struct VqeTask {
  OptimizerConfig optimizer;
};

struct QaoaTask {
  int depth = 1;
  std::string schedule = "fixed";  // fixed | morphing
  int morph_steps = 10;
  OptimizerConfig optimizer;
};

struct SpectrumTask {
  std::string method = "overlap";  // overlap | ssvqe
  int levels = 2;                  // number of energies returned
  double penalty = 0.0;            // <= 0 picks the default weight
  OptimizerConfig optimizer;
};

struct EvolveTask {
  std::string mode = "real";  // real | imaginary
  double time = 1.0;
  double dt = 1e-2;
  std::string init = "zeros";  // zeros | random
  double residual_budget = -1.0;  // negative: no budget
};

struct GibbsTask {
  double tau = 0.5;
  double dt = 1e-3;
  int max_weight = 0;
};

struct LinearAlgebraTask {
  std::string task = "solve";       // solve | multiply
  std::string locality = "global";  // global | local
  std::string matrix;               // PauliSum lines
  std::string v0 = "zero";          // zero | plus
  int steps = 0;                    // morphing steps for solve; 0 is a direct minimisation
  double tolerance = 1e-6;
  OptimizerConfig optimizer;
};

using TaskConfig = std::variant<VqeTask, QaoaTask, SpectrumTask, EvolveTask, GibbsTask, LinearAlgebraTask>;

std::string task_name(const TaskConfig& task);

struct ExperimentConfig {
  ProblemConfig problem;
  AnsatzConfig ansatz;
  std::vector<TaskConfig> tasks;
  std::optional<NoiseConfig> noise;
  std::vector<Stage> pipeline;
  std::uint64_t shots = 0;  // 0: exact expectation values
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

// YAML, or JSON (parsed as the same schema). Unknown keys, wrong types and
// out-of-range values are rejected before anything runs. `name` labels error
// messages; `base_dir` resolves relative file references.
ExperimentConfig parse_config(const std::string& text, const std::string& name = "<config>",
                              const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

// Canonical form: sorted keys, typed values, defaults filled in. The output
// directory is left out, so it does not change the hash.
nlohmann::json to_json(const ExperimentConfig& config);
// 64-bit FNV-1a of the compact canonical JSON, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

PauliSum problem_hamiltonian(const ProblemConfig& problem);
int problem_qubits(const ProblemConfig& problem);
NoiseModel build_noise_model(const NoiseConfig& noise, int n_qubits);

}  // namespace nisq::cli
