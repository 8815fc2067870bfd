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

#include "nisq/core/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace nisq {

void check_statevector_capacity(int n_qubits) {
  if (n_qubits < 0) throw std::invalid_argument("negative qubit count");
  if (n_qubits > kMaxStatevectorQubits)
    throw CapacityError("statevector register of " + std::to_string(n_qubits) +
                        " qubits exceeds the cap of " +
                        std::to_string(kMaxStatevectorQubits));
}

void check_density_capacity(int n_qubits) {
  if (n_qubits < 0) throw std::invalid_argument("negative qubit count");
  if (n_qubits > kMaxDensityQubits)
    throw CapacityError("density-matrix register of " + std::to_string(n_qubits) +
                        " qubits exceeds the cap of " +
                        std::to_string(kMaxDensityQubits));
}

int qubits_of(Eigen::Index dim) {
  if (dim <= 0) return -1;
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return (Eigen::Index{1} << n) == dim ? n : -1;
}

CMatrix expm_hermitian(const CMatrix& h, Complex factor) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  CVector d = (factor * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix partial_trace(const CMatrix& rho, int n_qubits, const std::vector<int>& keep) {
  const std::size_t dim = dim_of(n_qubits);
  if (static_cast<std::size_t>(rho.rows()) != dim || rho.rows() != rho.cols())
    throw std::invalid_argument("partial_trace: dimension mismatch");
  std::size_t keep_mask = 0;
  for (int q : keep) {
    if (q < 0 || q >= n_qubits) throw std::out_of_range("partial_trace: qubit index");
    keep_mask |= std::size_t{1} << (n_qubits - 1 - q);
  }
  const int k = static_cast<int>(keep.size());
  auto compress = [&](std::size_t idx) {
    std::size_t out = 0;
    for (int j = 0; j < k; ++j) {
      const std::size_t bit = (idx >> (n_qubits - 1 - keep[j])) & 1U;
      out |= bit << (k - 1 - j);
    }
    return out;
  };
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dim_of(k)), static_cast<Eigen::Index>(dim_of(k)));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if ((i & ~keep_mask) != (j & ~keep_mask)) continue;
      out(compress(i), compress(j)) += rho(i, j);
    }
  }
  return out;
}

double trace_distance(const CMatrix& a, const CMatrix& b) {
  CMatrix d = a - b;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (d + d.adjoint()));
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

namespace {
CMatrix psd_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  RVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}
}  // namespace

double fidelity(const CMatrix& rho, const CMatrix& sigma) {
  CMatrix s = psd_sqrt(rho);
  CMatrix inner = s * sigma * s;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (inner + inner.adjoint()));
  double t = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return t * t;
}

double fidelity(const CVector& a, const CVector& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

RVector pinv_solve(const RMatrix& m, const RVector& b, double cutoff) {
  Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& s = svd.singularValues();
  RVector out = RVector::Zero(m.cols());
  if (s.size() == 0 || s(0) == 0.0) return out;
  RVector ub = svd.matrixU().transpose() * b;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff * s(0)) out += svd.matrixV().col(i) * (ub(i) / s(i));
  return out;
}

bool all_finite(const RVector& v) { return v.array().isFinite().all(); }

}  // namespace nisq
