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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nisq/core/circuit.hpp"
#include "nisq/core/simulator.hpp"
#include "nisq/noise/channel.hpp"

namespace nisq {

// Single-qubit Lindblad noise acting on every qubit for `duration` after each
// gate, in the factor-2 convention of LindbladSystem.
struct ContinuousNoise {
  std::vector<CMatrix> jumps;  // 2x2 operators, rates absorbed
  double duration = 0.0;
  double dt = 0.0;  // integrator step; 0 picks duration / 64
};

// Gate noise: channel lookup is by gate name ("H", "CNOT"; an inverse "G'"
// shares G's entry; rotations also match "R" plus their non-identity
// letters), then by gate arity.
//
// `reduction[l]` is the divisor h_l >= 1 applied to the continuous noise on
// qubit l (rates become rate / h_l; infinity removes it). Gate channels are
// not rescaled.
struct NoiseModel {
  std::map<std::string, QuantumChannel> by_name;
  std::optional<QuantumChannel> one_qubit;
  std::optional<QuantumChannel> two_qubit;
  std::optional<ContinuousNoise> continuous;
  std::vector<double> reduction;
  // Per-qubit column-stochastic readout matrices [[P(0|0), P(0|1)], [P(1|0), P(1|1)]].
  std::vector<RMatrix> readout;
  // When set, a gate with no channel assignment is an error.
  bool strict = false;

  // nullptr when the gate has no assigned channel.
  const QuantumChannel* channel_for(const GateOp& gate) const;
  // exp(duration L_l) for qubit l of an n-qubit register, reduction applied.
  std::optional<QuantumChannel> idle_channel(int qubit, int n_qubits) const;
  bool noiseless() const;
};

// Qubits a gate's channel acts on: controls then targets for fixed gates,
// the ascending Pauli support for rotations.
std::vector<int> noise_targets(const GateOp& gate);

// Declarative channel factory used by configs: "identity", "depolarizing",
// "amplitude_damping", "dephasing", "bit_flip".
QuantumChannel make_channel(const std::string& name, double parameter, int arity);

// One gate followed by its noise: U, then the gate channel on the gate's
// qubits, then the continuous noise on every qubit.
void apply_noisy_gate(CMatrix& rho, int n_qubits, const GateOp& gate, const RVector& theta,
                      const NoiseModel& noise, const std::vector<std::optional<QuantumChannel>>& idle);

// rho_out = E_N o U_N o ... o E_1 o U_1 (rho_in).
CMatrix run_noisy_circuit(const ParametrisedCircuit& circuit, const RVector& theta,
                          const NoiseModel& noise, const CMatrix& rho_in);
QuantumState run_noisy_circuit(const ParametrisedCircuit& circuit, const RVector& theta,
                               const NoiseModel& noise, const QuantumState& input);

// Per-qubit idle channels for an n-qubit register.
std::vector<std::optional<QuantumChannel>> idle_channels(const NoiseModel& noise, int n_qubits);

}  // namespace nisq
