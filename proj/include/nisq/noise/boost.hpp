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
#include "nisq/core/random.hpp"
#include "nisq/noise/noise_model.hpp"

namespace nisq {

// Noise boosting by unitary folding: G -> G (G^dagger G)^k runs 2k + 1 noisy
// gates in place of one. An odd integer alpha folds every noisy gate
// (alpha - 1)/2 times; other alpha >= 1 mixes the two neighbouring odd
// factors per gate with weight w_high on the larger one.
struct FoldMix {
  int k_low = 0;
  int k_high = 0;
  double w_high = 0.0;
};

FoldMix fold_mix(double alpha);

// Every gate that carries noise folded k times. Noiseless gates are left
// alone: folding them adds nothing.
ParametrisedCircuit fold_circuit(const ParametrisedCircuit& circuit, const NoiseModel& noise, int k);

// One random draw of the fractional mixture.
ParametrisedCircuit sample_folded_circuit(const ParametrisedCircuit& circuit, const NoiseModel& noise,
                                          double alpha, Rng& rng);

// Exact average output of the folded mixture.
CMatrix run_boosted_circuit(const ParametrisedCircuit& circuit, const RVector& theta, const NoiseModel& noise,
                            double alpha, const CMatrix& rho_in);

// The error channel of the boosted gate, (average noisy fold) o U^{-1}, on the
// gate's own qubits in noise_targets order. Continuous noise is included only
// on those qubits.
QuantumChannel boosted_error_channel(const GateOp& gate, const RVector& theta, const NoiseModel& noise,
                                     double alpha);

// Effective depolarizing rate of the boosted error over that of the unboosted
// one. Equal to alpha only for noise that commutes with the gate and is small;
// this is the factor actually achieved.
double realised_boost_factor(const GateOp& gate, const RVector& theta, const NoiseModel& noise, double alpha);

}  // namespace nisq
