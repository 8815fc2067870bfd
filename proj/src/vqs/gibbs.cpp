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

#include "nisq/vqs/gibbs.hpp"

#include <stdexcept>

#include "nisq/core/simulator.hpp"

namespace nisq {

ParametrisedCircuit gibbs_ansatz(int n, int max_weight) {
  if (n < 1) throw std::invalid_argument("gibbs_ansatz: need at least one system qubit");
  ParametrisedCircuit c(2 * n);
  for (int i = 0; i < n; ++i) c.h(i).cnot(i, n + i);
  for (const PauliString& p : pauli_basis(2 * n)) {
    if (p.y_count() % 2 == 0) continue;
    if (max_weight > 0 && p.weight() > max_weight) continue;
    c.rotation(p, c.add_parameters(), 0.5);
  }
  return c;
}

PauliSum extend_to_ancillas(const PauliSum& h) {
  const int n = h.qubits();
  PauliSum out(2 * n);
  for (const auto& [c, p] : h.real_terms()) {
    PauliString q(2 * n);
    for (int i = 0; i < n; ++i) q.set_letter(i, p.letter(i));
    q.set_phase_power(p.phase_power());
    out.add(c, q);
  }
  return out;
}

GibbsResult prepare_gibbs(const PauliSum& h, const ParametrisedCircuit& ansatz, double tau, double dt,
                          const EvolveConfig& config) {
  const int n = h.qubits();
  if (ansatz.qubits() != 2 * n) throw std::invalid_argument("prepare_gibbs: joint ansatz must have 2n qubits");
  if (!(tau >= 0.0)) throw std::invalid_argument("prepare_gibbs: tau must be non-negative");
  GibbsResult out;
  const RVector theta0 = RVector::Zero(ansatz.num_params());
  out.trace = evolve(ansatz, theta0, extend_to_ancillas(h), EvolutionMode::Imaginary, tau, dt, config);
  out.params = out.trace.final_params();
  const CVector psi = prepare(ansatz, out.params);
  std::vector<int> keep;
  for (int i = 0; i < n; ++i) keep.push_back(i);
  out.rho = partial_trace(psi * psi.adjoint(), 2 * n, keep);
  return out;
}

}  // namespace nisq
