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

#include "nisq/core/linalg.hpp"

namespace nisq {

struct GenEigenResult {
  RVector values;   // ascending
  CMatrix vectors;  // columns c with c^dagger S c = 1
  int rank = 0;     // dimension kept after regularisation
};

// Solves H c = E S c for Hermitian H and positive semidefinite S.
//
// Eigenvectors of S with eigenvalue below `threshold` are projected out first,
// so numerically dependent directions do not produce spurious energies.
// Throws when nothing survives the threshold.
GenEigenResult generalized_eigen(const CMatrix& h, const CMatrix& s, double threshold = 1e-8);

}  // namespace nisq
