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


#include "nisq/qem/individual.hpp"

#include <cmath>
#include <stdexcept>

#include "nisq/core/simulator.hpp"

namespace nisq {

MitigatedEstimate individual_error_reduction(const ParametrisedCircuit& circuit, const RVector& theta,
                                             const NoiseModel& noise, const PauliSum& observable,
                                             const std::vector<double>& h) {
  const int n = circuit.qubits();
  if (static_cast<int>(h.size()) != n) throw std::invalid_argument("individual_error_reduction: one factor per qubit required");
  for (double v : h)
    if (!(v > 1.0)) throw std::invalid_argument("individual_error_reduction: reduction factors must exceed 1");
  observable.require_hermitian("individual_error_reduction");
  std::vector<double> base = noise.reduction;
  if (base.empty()) base.assign(static_cast<std::size_t>(n), 1.0);
  if (static_cast<int>(base.size()) != n) throw std::invalid_argument("individual_error_reduction: reduction size mismatch");

  const CVector ref = circuit.reference();
  const CMatrix rho0 = ref * ref.adjoint();
  const double raw = expectation(run_noisy_circuit(circuit, theta, noise, rho0), observable);
  MitigatedEstimate e;
  e.method = "individual_error_reduction";
  e.inputs = {raw};
  e.rates = {1.0};
  e.value = raw;
  double sum_c = 0.0, sum_c2 = 0.0;
  for (int l = 0; l < n; ++l) {
    NoiseModel reduced = noise;
    reduced.reduction = base;
    reduced.reduction[static_cast<std::size_t>(l)] *= h[static_cast<std::size_t>(l)];
    const double ml = expectation(run_noisy_circuit(circuit, theta, reduced, rho0), observable);
    const double hl = h[static_cast<std::size_t>(l)];
    const double c = std::isinf(hl) ? 1.0 : hl / (hl - 1.0);
    e.value -= c * (raw - ml);
    e.inputs.push_back(ml);
    e.rates.push_back(hl);
    sum_c += c;
    sum_c2 += c * c;
  }
  e.gamma = (1.0 - sum_c) * (1.0 - sum_c) + sum_c2;
  return e;
}

}  // namespace nisq
