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


#include "nisq/qem/symmetry.hpp"

#include <cmath>
#include <stdexcept>

#include "nisq/vqo/gen_eigen.hpp"

namespace nisq {

void SymmetryOperator::validate() const {
  if (!pauli.is_hermitian()) throw std::invalid_argument("symmetry: operator must be Hermitian");
  if (pauli.is_identity_letters()) throw std::invalid_argument("symmetry: identity carries no information");
  if (sector != 1 && sector != -1) throw std::invalid_argument("symmetry: sector must be +1 or -1");
}

CMatrix SymmetryOperator::projector(int sector_sign) const {
  const CMatrix p = pauli.matrix();
  return 0.5 * (CMatrix::Identity(p.rows(), p.cols()) + double(sector_sign) * p);
}

SymmetryResult symmetry_verify(const CMatrix& rho, const SymmetryOperator& symmetry, const PauliSum& hamiltonian,
                               VerifyMode mode) {
  symmetry.validate();
  hamiltonian.require_hermitian("symmetry_verify");
  const int n = symmetry.pauli.qubits();
  if (hamiltonian.qubits() != n || rho.rows() != static_cast<Eigen::Index>(dim_of(n)))
    throw std::invalid_argument("symmetry_verify: register mismatch");
  const PauliSum p(1.0, symmetry.pauli);
  const PauliSum comm = hamiltonian * p - p * hamiltonian;
  if (comm.simplified(1e-12).size() != 0) throw std::invalid_argument("symmetry_verify: Hamiltonian does not commute with the symmetry");

  const double m = symmetry.sector;
  const double tr_p = symmetry.pauli.expectation(rho).real();
  const double acceptance = 0.5 * (rho.trace().real() + m * tr_p);
  if (acceptance < 1e-12) throw std::invalid_argument("symmetry_verify: acceptance probability below 1e-12");

  SymmetryResult out;
  out.acceptance = acceptance;
  MitigatedEstimate& e = out.estimate;
  e.inputs = {hamiltonian.expectation(rho).real()};
  if (mode == VerifyMode::Postselect) {
    const CMatrix proj = symmetry.projector(symmetry.sector);
    const CMatrix kept = proj * rho * proj;
    e.method = "symmetry_postselect";
    e.value = hamiltonian.expectation(kept).real() / kept.trace().real();
  } else {
    const PauliSum hp = hamiltonian * p;
    e.method = "symmetry_postprocess";
    e.value = (hamiltonian.expectation(rho).real() + m * hp.expectation(rho).real()) / (rho.trace().real() + m * tr_p);
  }
  e.gamma = 1.0 / acceptance;
  return out;
}

MitigatedEstimate qse_mitigate(const CMatrix& rho, const PauliSum& hamiltonian,
                               const std::vector<PauliString>& expansion, double threshold) {
  hamiltonian.require_hermitian("qse_mitigate");
  bool has_identity = false;
  for (const auto& s : expansion) has_identity = has_identity || (s.is_identity_letters() && s.phase_power() == 0);
  if (!has_identity) throw std::invalid_argument("qse_mitigate: the expansion set must contain the identity");
  const auto k = static_cast<Eigen::Index>(expansion.size());
  const CMatrix hm = hamiltonian.matrix();
  std::vector<CMatrix> ops;
  for (const auto& s : expansion) ops.push_back(s.matrix());
  CMatrix ht(k, k), st(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      const CMatrix left = ops[static_cast<std::size_t>(i)].adjoint();
      ht(i, j) = (left * hm * ops[static_cast<std::size_t>(j)] * rho).trace();
      st(i, j) = (left * ops[static_cast<std::size_t>(j)] * rho).trace();
    }
  const GenEigenResult r = generalized_eigen(0.5 * (ht + ht.adjoint()), 0.5 * (st + st.adjoint()), threshold);
  MitigatedEstimate e;
  e.method = "qse";
  e.inputs = {hamiltonian.expectation(rho).real()};
  e.value = r.values(0);
  return e;
}

}  // namespace nisq
