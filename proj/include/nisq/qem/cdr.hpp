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
#include <vector>

#include "nisq/core/circuit.hpp"
#include "nisq/core/random.hpp"
#include "nisq/noise/noise_model.hpp"
#include "nisq/qem/estimate.hpp"

namespace nisq {

// Copy of the circuit with rotations frozen at Clifford angles (phi a
// multiple of pi/4, i.e. Rz(theta) with theta a multiple of pi/2).
// Without an RNG every angle snaps to the nearest such value. With one, each
// rotation keeps its own angle with probability keep_fraction and otherwise
// snaps down or up with probability given by proximity, so repeated draws
// give a spread of near-Clifford circuits close to the target.
ParametrisedCircuit cliffordise(const ParametrisedCircuit& circuit, const RVector& theta, Rng* rng = nullptr,
                                double keep_fraction = 0.0);

struct CdrConfig {
  int training = 20;
  std::uint64_t seed = 0;
  double keep_fraction = 0.25;
};

struct CdrResult {
  MitigatedEstimate estimate;
  double slope = 1.0;
  double intercept = 0.0;
  std::vector<double> noisy;  // training pairs
  std::vector<double> ideal;
};

// Linear Clifford data regression: fits ideal = slope * noisy + intercept
// over Clifford training circuits (ideal from the statevector, noisy from the
// density simulator) and applies it to the target's noisy value. Throws when
// the noisy training values are all equal.
CdrResult clifford_data_regression(const ParametrisedCircuit& circuit, const RVector& theta, const NoiseModel& noise,
                                   const PauliSum& observable, const CdrConfig& config);

}  // namespace nisq
