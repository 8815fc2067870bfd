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

#include "nisq/vqo/cost.hpp"

#include <cmath>
#include <stdexcept>

namespace nisq {

std::string to_string(CostKind kind) {
  switch (kind) {
    case CostKind::PauliExpectation: return "pauli-expectation";
    case CostKind::OverlapPenalised: return "overlap-penalised";
    case CostKind::GlobalLinearAlgebra: return "global-linear-algebra";
    case CostKind::LocalLinearAlgebra: return "local-linear-algebra";
    case CostKind::SubspaceSum: return "subspace-sum";
  }
  return "unknown";
}

CostFunction CostFunction::expectation(PauliSum h) {
  h.require_hermitian("cost function");
  CostFunction c;
  c.kind_ = CostKind::PauliExpectation;
  c.n_ = h.qubits();
  c.h_ = std::move(h);
  return c;
}

CostFunction CostFunction::penalised(PauliSum h, std::vector<Penalty> penalties) {
  CostFunction c = expectation(std::move(h));
  const auto d = static_cast<Eigen::Index>(dim_of(c.n_));
  for (auto& p : penalties) {
    if (p.state.size() != d) throw std::invalid_argument("penalised cost: penalty state dimension mismatch");
    if (!(p.weight >= 0.0)) throw std::invalid_argument("penalised cost: penalty weight must be non-negative");
    p.state /= p.state.norm();
  }
  c.kind_ = CostKind::OverlapPenalised;
  c.penalties_ = std::move(penalties);
  return c;
}

CostFunction CostFunction::dense(CostKind kind, CMatrix op) {
  if (op.rows() != op.cols() || !is_hermitian(op, 1e-9))
    throw std::invalid_argument("dense cost: operator must be square and Hermitian");
  CostFunction c;
  c.kind_ = kind;
  c.n_ = qubits_of(op.rows());
  c.dense_ = 0.5 * (op + op.adjoint());
  return c;
}

CVector CostFunction::apply(const CVector& psi) const {
  if (psi.size() != static_cast<Eigen::Index>(dim_of(n_))) throw std::invalid_argument("cost: state dimension mismatch");
  CVector out = dense_ ? CVector(*dense_ * psi) : h_->apply(psi);
  for (const auto& p : penalties_) out += p.weight * p.state * p.state.dot(psi);
  return out;
}

double CostFunction::evaluate(const CVector& psi) const { return psi.dot(apply(psi)).real(); }

double CostFunction::variance(const CVector& psi) const {
  const CVector o = apply(psi);
  const double mean = psi.dot(o).real();
  return std::max(0.0, o.squaredNorm() - mean * mean);
}

CMatrix CostFunction::matrix() const {
  if (dense_) return *dense_;
  CMatrix m = h_->matrix();
  for (const auto& p : penalties_) m += p.weight * p.state * p.state.adjoint();
  return m;
}

}  // namespace nisq
