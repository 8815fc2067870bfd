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

#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "nisq/core/circuit.hpp"
#include "nisq/core/pauli.hpp"
#include "nisq/vqs/mclachlan.hpp"

namespace nisq {

struct EvolveConfig {
  double pinv_cutoff = 1e-8;  // relative to the largest singular value of M
  double residual_budget = std::numeric_limits<double>::infinity();
};

// Grid, parameters and diagnostics of one variational evolution. Entry i
// belongs to time times[i]; residuals[i] is that of the step leaving times[i]
// (the final entry repeats the residual at T with theta_dot from T).
struct EvolutionTrace {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<RVector> params;
  std::vector<double> residuals;
  std::vector<double> energies;
  std::vector<int> flagged_steps;
  bool flagged = false;
  std::string flag;

  const RVector& final_params() const { return params.back(); }
};

// Number of Euler steps covering [0, t] with steps no longer than dt.
int step_count(double t, double dt);

// theta_dot from the least-squares McLachlan solve.
RVector mclachlan_velocity(const McLachlanSystem& system, double pinv_cutoff);

// Explicit Euler: theta <- theta + dt * theta_dot until T. Steps whose
// residual exceeds the budget are flagged, as are imaginary-time steps that
// raise the energy.
EvolutionTrace evolve(const ParametrisedCircuit& circuit, const RVector& theta0, const PauliSum& hamiltonian,
                      EvolutionMode mode, double t_final, double dt, const EvolveConfig& config = {});

// CSV with header t,theta_0..theta_{p-1},residual,energy.
void write_trace_csv(std::ostream& out, const EvolutionTrace& trace);

}  // namespace nisq
