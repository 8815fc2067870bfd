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
#include <string>
#include <vector>

#include "nisq/core/pauli.hpp"

namespace nisq {

// CNF over variables 1..variables; literal +i is x_i, -i is not x_i.
struct CnfFormula {
  int variables = 0;
  std::vector<std::vector<int>> clauses;
};

// DIMACS: "c" comment lines, one "p cnf <vars> <clauses>" header, clauses as
// literal lists terminated by 0.
CnfFormula parse_dimacs(const std::string& text);

// Sum over clauses of the projector onto that clause being violated.
//
// Variable i lives on qubit i-1. A qubit in |0> (Z = +1) means TRUE, so the
// clause (x1 v x2) maps to (I - Z1)(I - Z2)/4. Each basis state's energy is
// the number of clauses it violates. Empty clauses are rejected.
PauliSum sat_to_hamiltonian(const CnfFormula& formula);

// Truth values of a computational basis index (qubit 0 is the leading bit).
std::vector<bool> assignment_of(std::uint64_t basis, int variables);
int violated_clauses(const CnfFormula& formula, const std::vector<bool>& assignment);

// Bitstring label of a basis index, qubit 0 first.
std::string bitstring(std::uint64_t basis, int n_qubits);

}  // namespace nisq
