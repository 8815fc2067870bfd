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

#include "nisq/noise/noise_model.hpp"

#include <cmath>
#include <stdexcept>

#include "nisq/noise/lindblad.hpp"

namespace nisq {

const QuantumChannel* NoiseModel::channel_for(const GateOp& gate) const {
  if (auto it = by_name.find(gate.name); it != by_name.end()) return &it->second;
  // An inverse gate (name + "'") shares its forward gate's noise.
  if (!gate.name.empty() && gate.name.back() == '\'') {
    if (auto it = by_name.find(gate.name.substr(0, gate.name.size() - 1)); it != by_name.end()) return &it->second;
  }
  if (gate.kind == GateKind::Rotation) {
    // Rotations also match by their non-identity letters: "RY", "RZZ".
    std::string key = "R";
    for (char c : gate.pauli.letters())
      if (c != 'I') key += c;
    if (auto it = by_name.find(key); it != by_name.end()) return &it->second;
  }
  const int k = static_cast<int>(noise_targets(gate).size());
  if (k == 1 && one_qubit) return &*one_qubit;
  if (k == 2 && two_qubit) return &*two_qubit;
  return nullptr;
}

std::optional<QuantumChannel> NoiseModel::idle_channel(int qubit, int n_qubits) const {
  if (!continuous || continuous->jumps.empty() || continuous->duration <= 0.0) return std::nullopt;
  if (qubit < 0 || qubit >= n_qubits) throw std::invalid_argument("idle_channel: qubit out of range");
  double h = 1.0;
  if (!reduction.empty()) {
    if (static_cast<int>(reduction.size()) != n_qubits)
      throw std::invalid_argument("noise model: reduction needs one entry per qubit");
    h = reduction[static_cast<std::size_t>(qubit)];
  }
  if (!(h >= 1.0)) throw std::invalid_argument("noise model: reduction factors must be >= 1");
  if (std::isinf(h)) return std::nullopt;
  std::vector<CMatrix> jumps;
  for (const auto& l : continuous->jumps) {
    if (l.rows() != 2 || l.cols() != 2) throw std::invalid_argument("continuous noise: jump operators must be 2x2");
    jumps.push_back(l / std::sqrt(h));
  }
  const double dt = continuous->dt > 0.0 ? continuous->dt : continuous->duration / 64.0;
  LindbladSystem sys(PauliSum(1), std::move(jumps));
  return lindblad_channel(sys, continuous->duration, dt);
}

bool NoiseModel::noiseless() const {
  if (one_qubit || two_qubit || !by_name.empty()) return false;
  return !continuous || continuous->jumps.empty() || continuous->duration <= 0.0;
}

std::vector<int> noise_targets(const GateOp& gate) {
  if (gate.kind == GateKind::Rotation) return gate.support();
  std::vector<int> out = gate.controls;
  out.insert(out.end(), gate.targets.begin(), gate.targets.end());
  return out;
}

QuantumChannel make_channel(const std::string& name, double p, int arity) {
  if (arity < 1 || arity > 2) throw std::invalid_argument("make_channel: arity must be 1 or 2");
  if (name == "identity") return identity_channel(arity);
  if (name == "depolarizing") return depolarizing_channel(p, arity);
  QuantumChannel single;
  if (name == "amplitude_damping")
    single = amplitude_damping_channel(p);
  else if (name == "dephasing")
    single = dephasing_channel(p);
  else if (name == "bit_flip")
    single = bit_flip_channel(p);
  else
    throw std::invalid_argument("make_channel: unknown channel '" + name + "'");
  // Independent copies on each qubit.
  return arity == 1 ? single : single.tensor(single);
}

std::vector<std::optional<QuantumChannel>> idle_channels(const NoiseModel& noise, int n_qubits) {
  std::vector<std::optional<QuantumChannel>> out;
  for (int q = 0; q < n_qubits; ++q) out.push_back(noise.idle_channel(q, n_qubits));
  return out;
}

void apply_noisy_gate(CMatrix& rho, int n, const GateOp& gate, const RVector& theta, const NoiseModel& noise,
                      const std::vector<std::optional<QuantumChannel>>& idle) {
  apply_gate(rho, n, gate, theta);
  const QuantumChannel* c = noise.channel_for(gate);
  const std::vector<int> targets = noise_targets(gate);
  if (c) {
    if (c->arity != static_cast<int>(targets.size()))
      throw std::invalid_argument("noise model: channel '" + c->label + "' arity does not match gate '" +
                                  gate.name + "'");
    rho = c->apply(rho, n, targets);
  } else if (noise.strict && !noise.continuous) {
    throw std::invalid_argument("noise model: no channel for gate '" + gate.name + "' in strict mode");
  }
  for (int q = 0; q < n; ++q)
    if (idle[static_cast<std::size_t>(q)]) rho = idle[static_cast<std::size_t>(q)]->apply(rho, n, {q});
}

CMatrix run_noisy_circuit(const ParametrisedCircuit& circuit, const RVector& theta, const NoiseModel& noise,
                          const CMatrix& rho_in) {
  const int n = circuit.qubits();
  check_density_capacity(n);
  circuit.check_params(theta);
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  if (rho_in.rows() != d || rho_in.cols() != d) throw std::invalid_argument("run_noisy_circuit: state dimension mismatch");
  const auto idle = idle_channels(noise, n);
  CMatrix rho = rho_in;
  for (const auto& g : circuit.gates()) apply_noisy_gate(rho, n, g, theta, noise, idle);
  return rho;
}

QuantumState run_noisy_circuit(const ParametrisedCircuit& circuit, const RVector& theta, const NoiseModel& noise,
                               const QuantumState& input) {
  CMatrix rho = run_noisy_circuit(circuit, theta, noise, input.density());
  return QuantumState::from_density(0.5 * (rho + rho.adjoint()));
}

}  // namespace nisq
