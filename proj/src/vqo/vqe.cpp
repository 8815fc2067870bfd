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

#include "nisq/vqo/vqe.hpp"

#include <cmath>
#include <stdexcept>

#include "nisq/core/random.hpp"
#include "nisq/core/simulator.hpp"

namespace nisq {

namespace {

// The ansatz state with gate `index` rotated by an extra `delta`.
CVector prepare_shifted(const ParametrisedCircuit& c, const RVector& theta, std::size_t index, double delta) {
  CVector psi = c.reference();
  const auto& gates = c.gates();
  for (std::size_t j = 0; j < gates.size(); ++j) {
    if (j == index) {
      GateOp g = gates[j];
      g.offset += delta;
      apply_gate(psi, c.qubits(), g, theta);
    } else {
      apply_gate(psi, c.qubits(), gates[j], theta);
    }
  }
  return psi;
}

void check_shapes(const CostFunction& cost, const ParametrisedCircuit& ansatz) {
  if (cost.qubits() != ansatz.qubits()) throw std::invalid_argument("vqe: ansatz and cost act on different registers");
}

}  // namespace

double cost_value(const CostFunction& cost, const ParametrisedCircuit& ansatz, const RVector& theta) {
  return cost.evaluate(prepare(ansatz, theta));
}

RVector cost_gradient(const CostFunction& cost, const ParametrisedCircuit& ansatz, const RVector& theta,
                      GradientMode mode, double fd_step) {
  check_shapes(cost, ansatz);
  ansatz.check_params(theta);
  const int p = ansatz.num_params();
  RVector g = RVector::Zero(p);
  std::vector<bool> shiftable(static_cast<std::size_t>(p), mode == GradientMode::ParameterShift);
  for (const auto& gate : ansatz.gates())
    if (gate.parametrised() && !gate.controls.empty()) shiftable[static_cast<std::size_t>(gate.slot)] = false;

  const auto& gates = ansatz.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const GateOp& gate = gates[i];
    if (!gate.parametrised() || !shiftable[static_cast<std::size_t>(gate.slot)] || gate.scale == 0.0) continue;
    const double plus = cost.evaluate(prepare_shifted(ansatz, theta, i, M_PI / 4));
    const double minus = cost.evaluate(prepare_shifted(ansatz, theta, i, -M_PI / 4));
    g(gate.slot) += gate.scale * (plus - minus);
  }
  for (int k = 0; k < p; ++k) {
    if (shiftable[static_cast<std::size_t>(k)]) continue;
    RVector tp = theta, tm = theta;
    tp(k) += fd_step;
    tm(k) -= fd_step;
    g(k) = (cost_value(cost, ansatz, tp) - cost_value(cost, ansatz, tm)) / (2 * fd_step);
  }
  return g;
}

RVector random_parameters(int count, std::uint64_t seed) {
  Rng rng(seed);
  RVector t(count);
  for (int i = 0; i < count; ++i) t(i) = 2 * M_PI * rng.uniform() - M_PI;
  return t;
}

VqeResult minimise(const CostFunction& cost, const ParametrisedCircuit& ansatz, const OptimizerConfig& config,
                   std::uint64_t seed, const std::optional<RVector>& start) {
  config.validate();
  check_shapes(cost, ansatz);
  auto f = [&](const RVector& t) { return cost_value(cost, ansatz, t); };
  auto grad = [&](const RVector& t) { return cost_gradient(cost, ansatz, t, config.gradient, config.fd_step); };
  VqeResult best;
  bool have = false;
  for (int r = 0; r <= config.restarts; ++r) {
    RVector x0 = (r == 0 && start) ? *start : random_parameters(ansatz.num_params(), derive_seed(seed, std::uint64_t(r)));
    ansatz.check_params(x0);
    OptimizeResult o = gradient_descent(f, grad, x0, config);
    if (!have || o.value < best.energy) {
      have = true;
      best.energy = o.value;
      best.params = o.params;
      best.trace = o.trace;
      best.iterations = o.iterations;
      best.converged = o.converged;
    }
  }
  if (!best.converged) {
    best.flagged = true;
    best.flag = "did not converge within max_iters";
  }
  return best;
}

VqeResult vqe(const PauliSum& hamiltonian, const ParametrisedCircuit& ansatz, const OptimizerConfig& config,
              std::uint64_t seed, const std::optional<RVector>& start) {
  return minimise(CostFunction::expectation(hamiltonian), ansatz, config, seed, start);
}

}  // namespace nisq
