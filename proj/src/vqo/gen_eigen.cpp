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

#include "nisq/vqo/gen_eigen.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace nisq {

GenEigenResult generalized_eigen(const CMatrix& h, const CMatrix& s, double threshold) {
  if (h.rows() != h.cols() || s.rows() != s.cols() || h.rows() != s.rows())
    throw std::invalid_argument("generalized_eigen: H and S must be square and the same size");
  if (!is_hermitian(h, 1e-9) || !is_hermitian(s, 1e-9))
    throw std::invalid_argument("generalized_eigen: H and S must be Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> se(0.5 * (s + s.adjoint()));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < se.eigenvalues().size(); ++i)
    if (se.eigenvalues()(i) > threshold) keep.push_back(i);
  if (keep.empty()) throw std::runtime_error("generalized_eigen: overlap matrix has no eigenvalue above threshold");
  // W = V_k Lambda_k^{-1/2}; W^dagger S W = I on the kept subspace.
  CMatrix w(h.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    w.col(static_cast<Eigen::Index>(j)) = se.eigenvectors().col(keep[j]) / std::sqrt(se.eigenvalues()(keep[j]));
  CMatrix reduced = w.adjoint() * h * w;
  Eigen::SelfAdjointEigenSolver<CMatrix> he(0.5 * (reduced + reduced.adjoint()));
  GenEigenResult out;
  out.values = he.eigenvalues();
  out.vectors = w * he.eigenvectors();
  out.rank = static_cast<int>(keep.size());
  return out;
}

}  // namespace nisq
