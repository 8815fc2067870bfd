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

#include "nisq/core/linalg.hpp"

namespace nisq {

// Column-stochastic readout confusion matrix, N(i, j) = P(read i | ideal j).
struct ConfusionMatrix {
  RMatrix n;

  // Tensor product of per-qubit 2x2 blocks, qubit 0 most significant.
  static ConfusionMatrix from_qubits(const std::vector<RMatrix>& blocks);
  // One qubit: eps = P(read 1 | 0), eta = P(read 0 | 1).
  static ConfusionMatrix single(double eps, double eta);

  // Throws unless columns sum to 1 and entries lie in [0, 1] (1e-12).
  void validate() const;
  RVector apply(const RVector& p_ideal) const;
};

// Projection of v onto the probability simplex.
RVector project_to_simplex(const RVector& v);

// Direct inverse when that is a distribution; otherwise projected gradient on
// the simplex for min ||N p - p_noise||, stopping at ||step|| < 1e-10. Throws
// for singular N.
RVector mitigate_measurement(const RVector& p_noise, const ConfusionMatrix& confusion);

}  // namespace nisq
