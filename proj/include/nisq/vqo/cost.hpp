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

#include <optional>
#include <string>
#include <vector>

#include "nisq/core/linalg.hpp"
#include "nisq/core/pauli.hpp"

namespace nisq {

enum class CostKind { PauliExpectation, OverlapPenalised, GlobalLinearAlgebra, LocalLinearAlgebra, SubspaceSum };

std::string to_string(CostKind kind);

// alpha |state><state|
struct Penalty {
  CVector state;
  double weight = 0.0;
};

// A Hermitian observable evaluated on normalised trial states.
//
// PauliExpectation and OverlapPenalised carry a PauliSum plus penalty
// projectors. The linear-algebra kinds carry a dense operator built once.
// SubspaceSum costs are evaluated by the SSVQE driver on several inputs and
// use the PauliSum part here.
class CostFunction {
 public:
  static CostFunction expectation(PauliSum h);
  static CostFunction penalised(PauliSum h, std::vector<Penalty> penalties);
  static CostFunction dense(CostKind kind, CMatrix op);

  CostKind kind() const { return kind_; }
  int qubits() const { return n_; }
  const std::optional<PauliSum>& hamiltonian() const { return h_; }
  const std::vector<Penalty>& penalties() const { return penalties_; }

  // <psi|O|psi>, real.
  double evaluate(const CVector& psi) const;
  // O|psi>
  CVector apply(const CVector& psi) const;
  // <O^2> - <O>^2; zero exactly on eigenstates.
  double variance(const CVector& psi) const;
  CMatrix matrix() const;

  // Exact minimum when known by construction (0 for linear-algebra costs).
  std::optional<double> known_minimum;

 private:
  CostKind kind_ = CostKind::PauliExpectation;
  int n_ = 0;
  std::optional<PauliSum> h_;
  std::vector<Penalty> penalties_;
  std::optional<CMatrix> dense_;
};

}  // namespace nisq
