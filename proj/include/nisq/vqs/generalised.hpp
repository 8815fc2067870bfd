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

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nisq/core/circuit.hpp"
#include "nisq/core/pauli.hpp"
#include "nisq/vqs/evolve.hpp"

namespace nisq {

// Raised when A(t) or the generalised McLachlan matrix is numerically
// singular (inverse condition below 1e-12).
class ConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// B(t)|u'>: |u'> is the evolving state itself unless a fixed reference is given.
struct DriveTerm {
  std::function<PauliSum(double)> b;
  std::optional<CVector> reference;
};

// A(t) d/dt |u(t)> = sum_k B_k(t) |u'_k>.
struct GeneralisedSpec {
  std::function<PauliSum(double)> a;
  std::vector<DriveTerm> drives;
};

// Trial state |u> = alpha |psi(theta)> with alpha = exp(lambda); lambda is
// stepped together with theta by the same least-squares solve:
//   Mbar_kj = Re <v_k|v_j>, Vbar_k = Re <v_k|du>, v_k = A d_k|u>,
// with lambda as parameter 0.
struct GeneralisedTrace {
  EvolutionTrace trace;         // theta part; residual is ||A u_dot - du||^2
  std::vector<double> log_norm; // lambda per grid point
};

GeneralisedTrace evolve_generalised(const GeneralisedSpec& spec, const ParametrisedCircuit& circuit,
                                    const RVector& theta0, double log_norm0, double t_final, double dt,
                                    const EvolveConfig& config = {});

struct EvolutionOutput {
  CVector state;  // normalised
  double norm = 1.0;
  RVector params;
  GeneralisedTrace trace;
};

// |u(t)> = C(t)|u0>, C(t) = (t/T) M + (1 - t/T) I: A = I with the fixed
// drive D|u0>, D = (M - I)/T. |u0> = circuit(theta0).
EvolutionOutput multiply_by_evolution(const PauliSum& m, const ParametrisedCircuit& circuit, const RVector& theta0,
                                      double t_final, double dt, const EvolveConfig& config = {});

// C(t)|u(t)> = |u0>: A = C(t) with drive -D|u>. Aborts with
// ConditioningError when C(t) is singular anywhere on the grid, end point
// included.
EvolutionOutput solve_by_evolution(const PauliSum& m, const ParametrisedCircuit& circuit, const RVector& theta0,
                                   double t_final, double dt, const EvolveConfig& config = {});

}  // namespace nisq
