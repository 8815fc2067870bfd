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


#include "nisq/qem/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace nisq {

ConfusionMatrix ConfusionMatrix::from_qubits(const std::vector<RMatrix>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("ConfusionMatrix: no qubits");
  RMatrix n = RMatrix::Ones(1, 1);
  for (const auto& b : blocks) {
    if (b.rows() != 2 || b.cols() != 2) throw std::invalid_argument("ConfusionMatrix: per-qubit blocks must be 2x2");
    n = kron(n, b);
  }
  ConfusionMatrix c{n};
  c.validate();
  return c;
}

ConfusionMatrix ConfusionMatrix::single(double eps, double eta) {
  RMatrix b(2, 2);
  b << 1.0 - eps, eta, eps, 1.0 - eta;
  return from_qubits({b});
}

void ConfusionMatrix::validate() const {
  if (n.rows() != n.cols() || qubits_of(n.rows()) < 0) throw std::invalid_argument("ConfusionMatrix: not a 2^n square matrix");
  if (n.minCoeff() < -1e-12 || n.maxCoeff() > 1.0 + 1e-12) throw std::invalid_argument("ConfusionMatrix: entries outside [0, 1]");
  for (Eigen::Index j = 0; j < n.cols(); ++j)
    if (std::abs(n.col(j).sum() - 1.0) > 1e-12) throw std::invalid_argument("ConfusionMatrix: columns must sum to 1");
}

RVector ConfusionMatrix::apply(const RVector& p_ideal) const {
  if (p_ideal.size() != n.cols()) throw std::invalid_argument("ConfusionMatrix: distribution size mismatch");
  return n * p_ideal;
}

RVector project_to_simplex(const RVector& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, tau = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / double(i + 1);
    if (u[i] - t > 0.0) tau = t;
  }
  return (v.array() - tau).cwiseMax(0.0).matrix();
}

RVector mitigate_measurement(const RVector& p_noise, const ConfusionMatrix& confusion) {
  confusion.validate();
  const RMatrix& n = confusion.n;
  if (p_noise.size() != n.rows()) throw std::invalid_argument("mitigate_measurement: distribution size mismatch");
  if (p_noise.minCoeff() < -1e-12 || std::abs(p_noise.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("mitigate_measurement: input is not a probability vector");
  if (inverse_condition(n) < 1e-12) throw std::invalid_argument("mitigate_measurement: confusion matrix is singular");
  RVector direct = n.partialPivLu().solve(p_noise);
  if (direct.minCoeff() >= -1e-12) {
    direct = direct.cwiseMax(0.0);
    return direct / direct.sum();
  }
  // Constrained least squares. Step 1 / L with L the largest eigenvalue of N^T N.
  const RMatrix ntn = n.transpose() * n;
  const RVector ntp = n.transpose() * p_noise;
  const double lip = Eigen::SelfAdjointEigenSolver<RMatrix>(ntn).eigenvalues().maxCoeff();
  RVector p = project_to_simplex(direct);
  for (int it = 0; it < 1000000; ++it) {
    const RVector next = project_to_simplex(p - (ntn * p - ntp) / lip);
    const double step = (next - p).norm();
    p = next;
    if (step < 1e-10) break;
  }
  return p;
}

}  // namespace nisq
