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

#include <optional>
#include <string>
#include <vector>

#include "nisq/core/circuit.hpp"
#include "nisq/noise/noise_model.hpp"
#include "nisq/qem/estimate.hpp"
#include "nisq/qem/symmetry.hpp"

namespace nisq {

enum class StageKind { Boost, QuasiProbability, Symmetry, Extrapolate };
enum class QpScope { Full, Partial };
enum class ExtrapolationKind { Linear, Richardson, Exponential, Hyperbolic };

// One step of a mitigation pipeline. Stages are listed in the order they act:
// circuit-level stages (boost, quasi-probability) first, then symmetry
// verification, then at most one extrapolation, last.
struct Stage {
  StageKind kind = StageKind::Boost;
  std::vector<double> alphas;                // boost factors, first 1
  QpScope scope = QpScope::Full;             // quasi-probability
  std::optional<SymmetryOperator> symmetry;  // symmetry
  VerifyMode mode = VerifyMode::Postselect;  // symmetry
  ExtrapolationKind extrapolation = ExtrapolationKind::Linear;
  // Mean error count for hyperbolic and exponential extrapolation; negative
  // means estimate it from the noise model.
  double mu = -1.0;

  static Stage boost(std::vector<double> alphas);
  static Stage quasi_probability(QpScope scope);
  static Stage verify(SymmetryOperator symmetry, VerifyMode mode = VerifyMode::Postselect);
  static Stage extrapolate(ExtrapolationKind kind, double mu = -1.0);
};

std::string to_string(StageKind k);
std::string to_string(ExtrapolationKind k);

// Throws std::invalid_argument naming the first incompatibility.
void validate_pipeline(const std::vector<Stage>& stages);

// Expected number of errors per run, sum over noisy gate applications of
// -ln(1 - p) with p the twirled error probability of the channel. With a
// symmetry and partial quasi-probability only anticommuting errors count.
double expected_error_count(const ParametrisedCircuit& circuit, const NoiseModel& noise,
                            const std::optional<SymmetryOperator>& partial_symmetry = std::nullopt);

// Runs the pipeline on exact density matrices: the value is the mean of the
// combined estimator. gamma composes per stage, sum_k beta_k^2 gamma_k across
// extrapolation points. stages[] records the intermediate values.
MitigatedEstimate combine(const std::vector<Stage>& stages, const ParametrisedCircuit& circuit, const RVector& theta,
                          const NoiseModel& noise, const PauliSum& observable);

}  // namespace nisq
