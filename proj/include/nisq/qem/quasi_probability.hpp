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
#include <vector>

#include "nisq/core/circuit.hpp"
#include "nisq/core/pauli.hpp"
#include "nisq/noise/channel.hpp"
#include "nisq/noise/noise_model.hpp"
#include "nisq/qem/estimate.hpp"

namespace nisq {

// sum_i q_i B_i, sampled as C sum_i sgn(q_i) p_i B_i with C = sum |q_i|.
struct QuasiProbabilityDecomposition {
  std::vector<QuantumChannel> basis;
  std::vector<double> q;

  double cost() const;
  std::vector<double> probabilities() const;
  // Pauli-transfer matrix of sum_i q_i B_i.
  RMatrix ptm() const;
};

// The sixteen one-qubit basis operations: I, X, Y, Z conjugations, the
// pi/2 rotations (I + i sigma)/sqrt 2, the mixed rotations
// (sigma_a + sigma_b)/sqrt 2, and the projections (I + sigma)/2 and
// (sigma_a + i sigma_b)/2. They span the one-qubit channel space. For arity 2
// the 256 tensor products are returned.
std::vector<QuantumChannel> standard_basis(int arity = 1);

// Pauli conjugations only. Enough for Pauli noise.
std::vector<QuantumChannel> pauli_basis_operations(int arity = 1);

// Solves sum_i q_i R(B_i) = R(target) R(noise)^{-1} in the Pauli-transfer
// representation, so that (sum q_i B_i) o noise = target. Extra basis
// elements get the least-norm solution. Throws when noise is singular or the
// basis cannot reach the required map.
QuasiProbabilityDecomposition decompose_recovery(const QuantumChannel& noise, const QuantumChannel& target,
                                                 const std::vector<QuantumChannel>& basis);

// Full inverse: target = identity.
QuasiProbabilityDecomposition invert_channel(const QuantumChannel& noise, const std::vector<QuantumChannel>& basis);

// Closed form for the depolarizing inverse cost, (p + 2) / (2 - 2p).
double depolarizing_inverse_cost(double p);

// Pauli noise with only the error components that anticommute with the
// symmetry (restricted to `targets`) kept; commuting components are folded
// into the identity. Throws for non-Pauli noise.
QuantumChannel anticommuting_part(const QuantumChannel& noise, const PauliString& symmetry,
                                  const std::vector<int>& targets);

// Per-gate decompositions, indexed like circuit.gates(); empty for
// gates without a noise channel.
using GateDecompositions = std::vector<std::optional<QuasiProbabilityDecomposition>>;

// Inverts every gate's channel against `basis`.
GateDecompositions decompose_circuit_noise(const ParametrisedCircuit& circuit, const NoiseModel& noise,
                                           const std::vector<QuantumChannel>& basis);

// Removes only the errors that commute with `symmetry`.
GateDecompositions partial_circuit_decompositions(const ParametrisedCircuit& circuit, const NoiseModel& noise,
                                                  const PauliString& symmetry);

struct QuasiProbabilitySettings {
  std::uint64_t shots = 100000;
  std::uint64_t seed = 0;
  // Shots per independent RNG stream.
  std::uint64_t block = 4096;
};

// Monte-Carlo estimator. Each shot draws one basis operation per noisy gate,
// runs the noisy circuit with those operations inserted after the gate's
// noise, takes one single-shot outcome of every observable term, and
// weights by the sign product times C_tot. gamma = C_tot^2.
MitigatedEstimate quasi_probability_estimate(const ParametrisedCircuit& circuit, const RVector& theta,
                                             const NoiseModel& noise, const PauliSum& observable,
                                             const GateDecompositions& decompositions,
                                             const QuasiProbabilitySettings& settings);

// Exact mean of the estimator by enumerating every branch.
MitigatedEstimate quasi_probability_exact(const ParametrisedCircuit& circuit, const RVector& theta,
                                          const NoiseModel& noise, const PauliSum& observable,
                                          const GateDecompositions& decompositions);

// Density matrix of the estimator's mean, sum over branches of the signed
// weight times the branch state. Refuses trees with more than 1e8 leaves.
CMatrix quasi_probability_state(const ParametrisedCircuit& circuit, const RVector& theta, const NoiseModel& noise,
                                const GateDecompositions& decompositions);

}  // namespace nisq
