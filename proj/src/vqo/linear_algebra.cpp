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

#include "nisq/vqo/linear_algebra.hpp"

#include <cmath>
#include <stdexcept>

#include "nisq/core/simulator.hpp"
#include "nisq/vqo/vqe.hpp"

namespace nisq {

namespace {

CostFunction build(const CMatrix& mm, const ParametrisedCircuit& v0_prep, LinearTask task, CostLocality locality) {
  const int n = v0_prep.qubits();
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  if (mm.rows() != d) throw std::invalid_argument("linear algebra cost: M and the v0 circuit act on different registers");
  const CMatrix id = CMatrix::Identity(d, d);
  const CVector v0 = prepare(v0_prep, RVector::Zero(v0_prep.num_params()));
  if (task == LinearTask::Multiply) {
    if (locality == CostLocality::Local)
      throw std::invalid_argument("linear algebra cost: the local cost is defined for the solve task only");
    const CVector w = mm * v0;
    const double nw = w.squaredNorm();
    if (nw < 1e-24) throw std::invalid_argument("linear algebra cost: M|v0> = 0");
    CostFunction c = CostFunction::dense(CostKind::GlobalLinearAlgebra, id - w * w.adjoint() / nw);
    c.known_minimum = 0.0;
    return c;
  }
  CMatrix proj;
  if (locality == CostLocality::Global) {
    proj = id - v0 * v0.adjoint();
  } else {
    // V (I - (1/n) sum_k |0_k><0_k|) V^dagger; the inner sum is diagonal.
    CMatrix inner = CMatrix::Zero(d, d);
    for (Eigen::Index b = 0; b < d; ++b) {
      int zeros = 0;
      for (int q = 0; q < n; ++q) zeros += ((b >> (n - 1 - q)) & 1) ? 0 : 1;
      inner(b, b) = 1.0 - double(zeros) / n;
    }
    const CMatrix v = circuit_unitary(v0_prep, RVector::Zero(v0_prep.num_params()));
    proj = v * inner * v.adjoint();
  }
  CostFunction c = CostFunction::dense(
      locality == CostLocality::Global ? CostKind::GlobalLinearAlgebra : CostKind::LocalLinearAlgebra,
      mm.adjoint() * proj * mm);
  c.known_minimum = 0.0;
  return c;
}

}  // namespace

CostFunction linear_algebra_hamiltonian(const PauliSum& m, const ParametrisedCircuit& v0_prep, LinearTask task,
                                        CostLocality locality) {
  if (m.qubits() != v0_prep.qubits())
    throw std::invalid_argument("linear algebra cost: M and the v0 circuit act on different registers");
  if (v0_prep.num_params() != 0) throw std::invalid_argument("linear algebra cost: v0 circuit must be fixed");
  return build(m.matrix(), v0_prep, task, locality);
}

MorphingSchedule linear_solve_schedule(const PauliSum& m, const ParametrisedCircuit& v0_prep, CostLocality locality) {
  if (m.qubits() != v0_prep.qubits())
    throw std::invalid_argument("linear_solve_schedule: register mismatch");
  const CMatrix mm = m.matrix();
  const auto d = mm.rows();
  return [mm, d, v0_prep, locality](double s) {
    const CMatrix ms = (1.0 - s) * CMatrix::Identity(d, d) + s * mm;
    return build(ms, v0_prep, LinearTask::Solve, locality);
  };
}

MorphingResult hamiltonian_morphing(const MorphingSchedule& schedule, const ParametrisedCircuit& ansatz, int steps,
                                    const RVector& start, const OptimizerConfig& config, double tolerance) {
  if (steps < 1) throw std::invalid_argument("hamiltonian_morphing: steps must be at least 1");
  ansatz.check_params(start);
  OptimizerConfig warm = config;
  warm.restarts = 0;
  MorphingResult out;
  RVector x = start;
  for (int i = 1; i <= steps; ++i) {
    const double s = double(i) / steps;
    const CostFunction cost = schedule(s);
    VqeResult r = minimise(cost, ansatz, warm, std::uint64_t(i), x);
    x = r.params;
    out.s_values.push_back(s);
    out.energies.push_back(r.energy);
    std::string why;
    if (r.flagged) why = r.flag;
    if (cost.known_minimum && r.energy - *cost.known_minimum > tolerance)
      why = "energy exceeds the known minimum by " + std::to_string(r.energy - *cost.known_minimum);
    if (!why.empty() && !out.flagged) {
      out.flagged = true;
      out.failing_s = s;
      out.flag = "morphing failed at s=" + std::to_string(s) + ": " + why;
    }
    out.energy = r.energy;
  }
  out.params = x;
  return out;
}

}  // namespace nisq
