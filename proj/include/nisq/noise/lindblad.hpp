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

#include <stdexcept>
#include <vector>

#include "nisq/core/linalg.hpp"
#include "nisq/core/pauli.hpp"
#include "nisq/noise/channel.hpp"

namespace nisq {

// Raised when an integrator step is too coarse; halve dt and retry.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// d rho/dt = -i[H, rho] + sum_k (2 L rho L^dagger - L^dagger L rho - rho L^dagger L).
//
// This is the convention with the factor 2 on the jump term, so an
// amplitude-damping operator sqrt(gamma) sigma^- empties |1> at rate 2 gamma.
// Rates are absorbed into the jump operators.
struct LindbladSystem {
  PauliSum hamiltonian;
  std::vector<CMatrix> jumps;

  LindbladSystem() = default;
  LindbladSystem(PauliSum h, std::vector<CMatrix> l);

  int qubits() const { return hamiltonian.qubits(); }
  CMatrix rhs(const CMatrix& rho) const;
  // Upper bound on the spectral radius of the generator.
  double generator_bound() const;
  // Sum of ||L_k||^2: bound on the total jump rate per unit time / 2.
  double jump_norm() const;

 private:
  CMatrix h_;
  std::vector<CMatrix> ldl_;
};

// Lowering operator |0><1|.
CMatrix sigma_minus();

// Fourth-order Runge-Kutta from 0 to t with steps no longer than dt. Throws
// StepSizeError when dt is outside the stability region or when the result
// drifts in trace by more than 1e-8 or loses positivity.
CMatrix lindblad_evolve(const LindbladSystem& system, const CMatrix& rho0, double t, double dt);

// States at each of the ascending `times`.
std::vector<CMatrix> lindblad_evolve(const LindbladSystem& system, const CMatrix& rho0,
                                     const std::vector<double>& times, double dt);

// Same integrator without the physicality checks; linear in rho0, so it also
// propagates operators such as |i><j|.
CMatrix lindblad_propagate(const LindbladSystem& system, const CMatrix& rho0, double t, double dt);

// The channel exp(t L) built by propagating the operator basis.
QuantumChannel lindblad_channel(const LindbladSystem& system, double t, double dt);

}  // namespace nisq
