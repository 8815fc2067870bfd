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
#include "nisq/vqs/evolve.hpp"

namespace nisq {

// System qubits 0..n-1, ancillas n..2n-1. Bell pairs (H on i, CNOT i -> n+i)
// make the maximally entangled state, followed by one rotation per Pauli
// string on the 2n qubits with an odd number of Y letters and weight at most
// `max_weight` (0 means no limit). Those generators keep the state real, as
// imaginary-time evolution of a real Hamiltonian does. All angles 0 leave the
// Bell state.
ParametrisedCircuit gibbs_ansatz(int n_system, int max_weight = 0);

struct GibbsResult {
  CMatrix rho;          // reduced state on the system
  RVector params;
  EvolutionTrace trace;
};

// Imaginary-time evolution of H (x) I for tau starting from the Bell state;
// the system marginal approximates exp(-2 tau H) / Tr exp(-2 tau H).
GibbsResult prepare_gibbs(const PauliSum& hamiltonian, const ParametrisedCircuit& joint_ansatz, double tau,
                          double dt, const EvolveConfig& config = {});

// H on n qubits as H (x) I on 2n.
PauliSum extend_to_ancillas(const PauliSum& h);

}  // namespace nisq
