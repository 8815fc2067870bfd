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

#include "nisq/core/circuit.hpp"
#include "nisq/core/pauli.hpp"

namespace nisq {

enum class EvolutionMode { Real, Imaginary };

// M theta_dot = rhs from McLachlan's principle for |phi(theta)> = U(theta)|ref>.
//
//   M_kj = Re <d_k phi|d_j phi>
//   real:      rhs_k = V_k = Im <d_k phi|H|phi>
//   imaginary: rhs_k = C_k = -Re <d_k phi|H|phi> = -(1/2) dE/dtheta_k
//
// With this V, Rx(theta) under H = X gives theta_dot = +2, matching
// exp(-iXt) = Rx(2t).
struct McLachlanSystem {
  EvolutionMode mode = EvolutionMode::Real;
  RMatrix m;
  RVector rhs;
  double energy = 0.0;  // <H>
  double h2 = 0.0;      // <H^2>
};

McLachlanSystem assemble_mclachlan(const ParametrisedCircuit& circuit, const RVector& theta,
                                   const PauliSum& hamiltonian, EvolutionMode mode);

// Same entries, each read off a simulated ancilla (Hadamard-test) circuit:
// the generator sigma is inserted after its gate, and the Pauli terms of H
// after the last gate.
McLachlanSystem assemble_mclachlan_circuits(const ParametrisedCircuit& circuit, const RVector& theta,
                                            const PauliSum& hamiltonian, EvolutionMode mode);

// || (d/dt + iH)|phi> ||^2 = theta_dot M theta_dot - 2 V theta_dot + <H^2> in real
// mode; || (d/dtau + H - E)|phi> ||^2, the same form with C and Var(H), in
// imaginary mode.
double mclachlan_residual(const McLachlanSystem& system, const RVector& theta_dot);

}  // namespace nisq
