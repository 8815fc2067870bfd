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
#include <vector>

#include "nisq/core/circuit.hpp"
#include "nisq/vqo/optimizer.hpp"

namespace nisq {

enum class QaoaSchedule { Fixed, Morphing };

struct QaoaConfig {
  int depth = 1;
  QaoaSchedule schedule = QaoaSchedule::Fixed;
  int morph_steps = 10;  // points on H(s) = (1 - s) H_X + s H_P, s = 1/steps .. 1
  OptimizerConfig optimizer;
};

struct QaoaResult {
  double energy = 0.0;  // <H_P> at the returned parameters
  RVector params;       // (theta_2, theta_1) per layer: H_P angle, then mixer angle
  RVector probabilities;
  std::uint64_t best_basis = 0;
  double best_probability = 0.0;
  std::vector<double> trace;
  bool flagged = false;
  std::string flag;
};

// H_X = sum_j X_j; its ground state |-...-> is the circuit's reference.
PauliSum mixer_hamiltonian(int n_qubits);

// Reference |-...->, then per layer exp(-i theta_2 H_P) followed by
// exp(-i theta_1 H_X). H_P must be diagonal (I/Z strings) with real weights.
ParametrisedCircuit qaoa_circuit(const PauliSum& problem, int depth);

// Fixed: minimise <H_P> directly. Morphing: warm-started minimisation of
// <H(s)> along the interpolation, ending on H_P. Starting angles are small
// random values so the search begins near the mixer ground state.
QaoaResult qaoa(const PauliSum& problem, const QaoaConfig& config, std::uint64_t seed);

}  // namespace nisq
