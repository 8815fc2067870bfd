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

#include "nisq/core/circuit.hpp"
#include "nisq/vqo/cost.hpp"
#include "nisq/vqo/optimizer.hpp"

namespace nisq {

struct VqeResult {
  double energy = 0.0;
  RVector params;
  std::vector<double> trace;  // best-so-far energy per iteration of the winning start
  int iterations = 0;
  bool converged = false;
  bool flagged = false;
  std::string flag;
};

double cost_value(const CostFunction& cost, const ParametrisedCircuit& ansatz, const RVector& theta);

// Gradient of cost_value. ParameterShift evaluates each rotation at phi +- pi/4
// (exact for exp(-i phi P)); slots that also drive a controlled rotation fall
// back to central differences.
RVector cost_gradient(const CostFunction& cost, const ParametrisedCircuit& ansatz, const RVector& theta,
                      GradientMode mode, double fd_step = 1e-6);

// Uniform angles in [-pi, pi).
RVector random_parameters(int count, std::uint64_t seed);

// Gradient descent from `start` (or random angles drawn from `seed`), plus
// config.restarts further random starts seeded by derive_seed(seed, r).
// Hitting max_iters returns the best point found, flagged.
VqeResult minimise(const CostFunction& cost, const ParametrisedCircuit& ansatz, const OptimizerConfig& config,
                   std::uint64_t seed, const std::optional<RVector>& start = std::nullopt);

VqeResult vqe(const PauliSum& hamiltonian, const ParametrisedCircuit& ansatz, const OptimizerConfig& config,
              std::uint64_t seed, const std::optional<RVector>& start = std::nullopt);

}  // namespace nisq
