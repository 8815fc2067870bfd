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

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nisq {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr Complex kI{0.0, 1.0};

// Register size limits for the dense backends.
inline constexpr int kMaxStatevectorQubits = 14;
inline constexpr int kMaxDensityQubits = 7;

// Thrown when a request exceeds the dense-simulation caps.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check_statevector_capacity(int n_qubits);
void check_density_capacity(int n_qubits);

inline std::size_t dim_of(int n_qubits) { return std::size_t{1} << n_qubits; }

// Number of qubits for a power-of-two dimension, or -1.
int qubits_of(Eigen::Index dim);

template <typename DA, typename DB>
Eigen::Matrix<typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar,
                                                   typename DB::Scalar>::ReturnType,
              Eigen::Dynamic, Eigen::Dynamic>
kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using S = typename Eigen::ScalarBinaryOpTraits<typename DA::Scalar,
                                                 typename DB::Scalar>::ReturnType;
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                       a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          S(a(i, j)) * b.template cast<S>();
  return out;
}

template <typename D>
bool is_hermitian(const Eigen::MatrixBase<D>& m, double tol = 1e-10) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

template <typename D>
bool is_unitary(const Eigen::MatrixBase<D>& m, double tol = 1e-12) {
  if (m.rows() != m.cols()) return false;
  using M = Eigen::Matrix<typename D::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  M eye = M::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - eye).cwiseAbs().maxCoeff() <= tol;
}

// exp(factor * h) for Hermitian h, through its eigendecomposition.
CMatrix expm_hermitian(const CMatrix& h, Complex factor);

// Keeps the listed qubits (ascending order preserved) and traces out the rest.
CMatrix partial_trace(const CMatrix& rho, int n_qubits, const std::vector<int>& keep);

double trace_distance(const CMatrix& a, const CMatrix& b);

// Uhlmann fidelity; reduces to |<a|b>|^2 for pure inputs.
double fidelity(const CMatrix& rho, const CMatrix& sigma);
double fidelity(const CVector& a, const CVector& b);

// Least-norm solution of m x = b with singular values below
// cutoff * sigma_max discarded.
RVector pinv_solve(const RMatrix& m, const RVector& b, double cutoff);

// Ratio of smallest to largest singular value, 0 for the zero matrix.
template <typename D>
double inverse_condition(const Eigen::MatrixBase<D>& m) {
  using M = Eigen::Matrix<typename D::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::JacobiSVD<M> svd(m.eval());
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

bool all_finite(const RVector& v);

}  // namespace nisq
