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

#include "nisq/core/pauli.hpp"
#include "nisq/qem/estimate.hpp"

namespace nisq {

// A conserved Pauli parity and the sector the ideal state lives in.
struct SymmetryOperator {
  PauliString pauli;
  int sector = 1;  // +1 or -1

  // Throws unless the Pauli is Hermitian and the sector is +-1.
  void validate() const;
  // (I + m P) / 2
  CMatrix projector(int sector_sign) const;
};

enum class VerifyMode { Postselect, Postprocess };

struct SymmetryResult {
  MitigatedEstimate estimate;
  double acceptance = 1.0;  // Tr[M_m rho]
};

// Energy of rho restricted to the symmetry sector. Postselect projects;
// postprocess uses (Tr[H rho] + m Tr[H P rho]) / (1 + m Tr[P rho]). Throws
// if H does not commute with the symmetry or the sector is empty.
SymmetryResult symmetry_verify(const CMatrix& rho, const SymmetryOperator& symmetry, const PauliSum& hamiltonian,
                               VerifyMode mode);

// Ground energy from the pencil H~ c = E S~ c built on the noisy state with
// expansion operators `expansion` (identity required).
MitigatedEstimate qse_mitigate(const CMatrix& rho, const PauliSum& hamiltonian,
                               const std::vector<PauliString>& expansion, double threshold = 1e-8);

}  // namespace nisq
