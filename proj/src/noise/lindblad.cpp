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

#include "nisq/noise/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace nisq {

namespace {

// RK4 on the linear real-axis/imaginary-axis stability boundary is about 2.78;
// keep a margin.
constexpr double kStabilityLimit = 2.5;

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

int step_count(double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("lindblad: dt must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("lindblad: t must be non-negative");
  return std::max(0, static_cast<int>(std::ceil(t / dt - 1e-9)));
}

}  // namespace

LindbladSystem::LindbladSystem(PauliSum h, std::vector<CMatrix> l)
    : hamiltonian(std::move(h)), jumps(std::move(l)) {
  hamiltonian.require_hermitian("LindbladSystem");
  check_density_capacity(hamiltonian.qubits());
  h_ = hamiltonian.matrix();
  const Eigen::Index d = h_.rows();
  for (const auto& j : jumps) {
    if (j.rows() != d || j.cols() != d) throw std::invalid_argument("LindbladSystem: jump operator dimension mismatch");
    ldl_.push_back(j.adjoint() * j);
  }
}

CMatrix LindbladSystem::rhs(const CMatrix& rho) const {
  CMatrix out = Complex(0.0, -1.0) * (h_ * rho - rho * h_);
  for (std::size_t k = 0; k < jumps.size(); ++k)
    out += 2.0 * jumps[k] * rho * jumps[k].adjoint() - ldl_[k] * rho - rho * ldl_[k];
  return out;
}

double LindbladSystem::jump_norm() const {
  double s = 0.0;
  for (const auto& j : jumps) {
    const double n = spectral_norm(j);
    s += n * n;
  }
  return s;
}

double LindbladSystem::generator_bound() const { return 2.0 * spectral_norm(h_) + 4.0 * jump_norm(); }

CMatrix sigma_minus() {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

CMatrix lindblad_propagate(const LindbladSystem& sys, const CMatrix& rho0, double t, double dt) {
  const int steps = step_count(t, dt);
  if (rho0.rows() != static_cast<Eigen::Index>(dim_of(sys.qubits())) || rho0.cols() != rho0.rows())
    throw std::invalid_argument("lindblad: state dimension mismatch");
  CMatrix rho = rho0;
  if (steps == 0) return rho;
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    CMatrix k1 = sys.rhs(rho);
    CMatrix k2 = sys.rhs(rho + 0.5 * h * k1);
    CMatrix k3 = sys.rhs(rho + 0.5 * h * k2);
    CMatrix k4 = sys.rhs(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

CMatrix lindblad_evolve(const LindbladSystem& sys, const CMatrix& rho0, double t, double dt) {
  const int steps = step_count(t, dt);
  if (steps > 0 && (t / steps) * sys.generator_bound() > kStabilityLimit)
    throw StepSizeError("lindblad_evolve: dt outside the RK4 stability region; halve dt");
  CMatrix rho = lindblad_propagate(sys, rho0, t, dt);
  const double drift = std::abs(rho.trace() - rho0.trace());
  if (drift > 1e-8) throw StepSizeError("lindblad_evolve: trace drift exceeds 1e-8; halve dt");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8) throw StepSizeError("lindblad_evolve: state lost positivity; halve dt");
  return rho;
}

std::vector<CMatrix> lindblad_evolve(const LindbladSystem& sys, const CMatrix& rho0,
                                     const std::vector<double>& times, double dt) {
  std::vector<CMatrix> out;
  CMatrix rho = rho0;
  double now = 0.0;
  for (double t : times) {
    if (t < now) throw std::invalid_argument("lindblad_evolve: times must be ascending");
    rho = lindblad_evolve(sys, rho, t - now, dt);
    now = t;
    out.push_back(rho);
  }
  return out;
}

QuantumChannel lindblad_channel(const LindbladSystem& sys, double t, double dt) {
  const Eigen::Index d = static_cast<Eigen::Index>(dim_of(sys.qubits()));
  CMatrix s(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      CMatrix e = CMatrix::Zero(d, d);
      e(i, j) = 1.0;
      CMatrix out = lindblad_propagate(sys, e, t, dt);
      s.col(i + j * d) = Eigen::Map<const CVector>(out.data(), d * d);
    }
  // The integrator's truncation error keeps the map trace preserving only to
  // its own accuracy, so validate loosely here.
  QuantumChannel c = QuantumChannel::from_superoperator("lindblad", s, false);
  if (c.tp_error() > 1e-8) throw StepSizeError("lindblad_channel: integration too coarse; halve dt");
  c.trace_preserving = true;
  return c;
}

}  // namespace nisq
