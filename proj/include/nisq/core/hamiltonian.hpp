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

enum class LadderKind { Create, Annihilate };

// Jordan-Wigner image of a fermionic ladder operator on mode i (1-based) of
// N modes: I^{i-1} (x) s (x) Z^{N-i}, with s = (X + iY)/2 for creation and
// (X - iY)/2 for annihilation. The vacuum is |1...1>.
PauliSum jordan_wigner(int mode, int n_modes, LadderKind kind);

// H = h sum_i Z_i Z_{i+1} + lambda sum_i X_i on an open chain.
PauliSum transverse_ising(int n_qubits, double h, double lambda);

// First-order product formula (prod_j exp(-i H_j t / steps))^steps as a
// parameter-free circuit of Pauli rotations.
ParametrisedCircuit trotterize(const PauliSum& hamiltonian, double t, int steps);

}  // namespace nisq
