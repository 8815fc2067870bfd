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
#include <functional>
#include <string>
#include <vector>

#include "nisq/core/circuit.hpp"
#include "nisq/vqo/cost.hpp"
#include "nisq/vqo/optimizer.hpp"

namespace nisq {

enum class LinearTask { Multiply, Solve };
enum class CostLocality { Global, Local };

// Cost Hamiltonians whose zero-energy states answer a linear-algebra task for
// |v0> = V|0...0>:
//   multiply, global: I - M|v0><v0|M^dagger / ||M|v0>||^2
//   solve, global:    M^dagger (I - |v0><v0|) M
//   solve, local:     M^dagger V (I - (1/n) sum_k |0_k><0_k| (x) I) V^dagger M
// The local projector is only defined for the solve task; Multiply + Local
// is rejected, as is M|v0> = 0 for Multiply.
CostFunction linear_algebra_hamiltonian(const PauliSum& m, const ParametrisedCircuit& v0_prep, LinearTask task,
                                        CostLocality locality);

// One point of a morphing path: the cost at s in [0, 1].
using MorphingSchedule = std::function<CostFunction(double s)>;

// Solve-task path with M(s) = (1 - s) I + s M; at s = 0 the solution is |v0>.
MorphingSchedule linear_solve_schedule(const PauliSum& m, const ParametrisedCircuit& v0_prep,
                                       CostLocality locality);

struct MorphingResult {
  double energy = 0.0;
  RVector params;
  std::vector<double> s_values;
  std::vector<double> energies;
  bool flagged = false;
  std::string flag;
  double failing_s = -1.0;
};

// Outer loop over s = 1/steps, ..., 1, each a VQE warm-started from the
// previous optimum (no restarts). A step is a failure when its VQE does not
// converge, or when the cost knows its exact minimum and the energy exceeds
// it by more than `tolerance`; the first failing s is recorded.
MorphingResult hamiltonian_morphing(const MorphingSchedule& schedule, const ParametrisedCircuit& ansatz, int steps,
                                    const RVector& start, const OptimizerConfig& config, double tolerance = 1e-6);

}  // namespace nisq
