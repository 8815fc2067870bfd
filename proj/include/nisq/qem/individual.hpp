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

#include <vector>

#include "nisq/core/circuit.hpp"
#include "nisq/noise/noise_model.hpp"
#include "nisq/qem/estimate.hpp"

namespace nisq {

// First-order removal of the continuous idle noise, qubit by qubit. h[l] is
// the factor by which error correction divides qubit l's noise rate (> 1,
// infinity allowed). With <M>_l measured at that reduction the estimate is
// <M> - sum_l h_l/(h_l - 1) (<M> - <M>_l), leaving O(tau^2) bias for noise
// duration tau. Gate channels are not touched.
MitigatedEstimate individual_error_reduction(const ParametrisedCircuit& circuit, const RVector& theta,
                                             const NoiseModel& noise, const PauliSum& observable,
                                             const std::vector<double>& h);

}  // namespace nisq
