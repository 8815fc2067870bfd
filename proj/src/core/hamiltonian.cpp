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

#include "nisq/core/hamiltonian.hpp"

#include <stdexcept>

namespace nisq {

PauliSum jordan_wigner(int mode, int n_modes, LadderKind kind) {
  if (n_modes < 1 || mode < 1 || mode > n_modes)
    throw std::out_of_range("jordan_wigner: mode index out of range");
  PauliString x(n_modes), y(n_modes);
  for (int q = mode; q < n_modes; ++q) {
    x.set_letter(q, 'Z');
    y.set_letter(q, 'Z');
  }
  x.set_letter(mode - 1, 'X');
  y.set_letter(mode - 1, 'Y');
  const double sign = kind == LadderKind::Create ? 1.0 : -1.0;
  PauliSum out(n_modes);
  out.add(0.5, x);
  out.add(Complex(0.0, 0.5 * sign), y);
  return out;
}

PauliSum transverse_ising(int n_qubits, double h, double lambda) {
  if (n_qubits < 1) throw std::invalid_argument("transverse_ising: need at least one qubit");
  PauliSum out(n_qubits);
  for (int i = 0; i + 1 < n_qubits; ++i) {
    PauliString zz(n_qubits);
    zz.set_letter(i, 'Z');
    zz.set_letter(i + 1, 'Z');
    out.add(h, zz);
  }
  for (int i = 0; i < n_qubits; ++i) out.add(lambda, PauliString::single(n_qubits, i, 'X'));
  return out;
}

ParametrisedCircuit trotterize(const PauliSum& hamiltonian, double t, int steps) {
  if (steps < 1) throw std::invalid_argument("trotterize: need at least one step");
  hamiltonian.require_hermitian("trotterize");
  const auto terms = hamiltonian.real_terms();
  ParametrisedCircuit c(hamiltonian.qubits());
  const double dt = t / steps;
  for (int s = 0; s < steps; ++s)
    for (const auto& [w, p] : terms) c.fixed_rotation(p, w * dt);
  return c;
}

}  // namespace nisq
