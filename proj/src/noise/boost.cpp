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

#include "nisq/noise/boost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nisq/core/simulator.hpp"

namespace nisq {

namespace {

bool is_noisy(const GateOp& g, const NoiseModel& noise) {
  return noise.channel_for(g) != nullptr || (noise.continuous && !noise.continuous->jumps.empty());
}

void add_folded(ParametrisedCircuit& out, const GateOp& g, int k) {
  out.add(g);
  const GateOp inv = g.inverse();
  for (int i = 0; i < k; ++i) {
    out.add(inv);
    out.add(g);
  }
}

void apply_folded(CMatrix& rho, int n, const GateOp& g, int k, const RVector& theta, const NoiseModel& noise,
                  const std::vector<std::optional<QuantumChannel>>& idle) {
  apply_noisy_gate(rho, n, g, theta, noise, idle);
  const GateOp inv = g.inverse();
  for (int i = 0; i < k; ++i) {
    apply_noisy_gate(rho, n, inv, theta, noise, idle);
    apply_noisy_gate(rho, n, g, theta, noise, idle);
  }
}

// The gate moved onto a register holding just its noise targets, in order.
GateOp localise(const GateOp& g, const std::vector<int>& targets) {
  auto local = [&](int q) {
    return static_cast<int>(std::find(targets.begin(), targets.end(), q) - targets.begin());
  };
  GateOp out = g;
  for (int& q : out.targets) q = local(q);
  for (int& q : out.controls) q = local(q);
  if (g.kind == GateKind::Rotation) {
    PauliString p(static_cast<int>(targets.size()));
    for (std::size_t i = 0; i < targets.size(); ++i) p.set_letter(static_cast<int>(i), g.pauli.letter(targets[i]));
    p.set_phase_power(g.pauli.phase_power());
    out.pauli = p;
  }
  return out;
}

}  // namespace

FoldMix fold_mix(double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw std::invalid_argument("noise boost: alpha must be >= 1");
  FoldMix m;
  m.k_low = static_cast<int>(std::floor((alpha - 1.0) / 2.0 + 1e-12));
  const double low = 2.0 * m.k_low + 1.0;
  if (std::abs(alpha - low) <= 1e-12) {
    m.k_high = m.k_low;
    return m;
  }
  m.k_high = m.k_low + 1;
  m.w_high = (alpha - low) / 2.0;
  return m;
}

ParametrisedCircuit fold_circuit(const ParametrisedCircuit& circuit, const NoiseModel& noise, int k) {
  if (k < 0) throw std::invalid_argument("fold_circuit: negative fold count");
  ParametrisedCircuit out(circuit.qubits(), circuit.num_params());
  if (circuit.has_reference()) out.set_reference(circuit.reference());
  for (const auto& g : circuit.gates()) add_folded(out, g, is_noisy(g, noise) ? k : 0);
  return out;
}

ParametrisedCircuit sample_folded_circuit(const ParametrisedCircuit& circuit, const NoiseModel& noise, double alpha,
                                          Rng& rng) {
  const FoldMix m = fold_mix(alpha);
  ParametrisedCircuit out(circuit.qubits(), circuit.num_params());
  if (circuit.has_reference()) out.set_reference(circuit.reference());
  for (const auto& g : circuit.gates()) {
    int k = 0;
    if (is_noisy(g, noise)) k = (m.w_high > 0.0 && rng.uniform() < m.w_high) ? m.k_high : m.k_low;
    add_folded(out, g, k);
  }
  return out;
}

CMatrix run_boosted_circuit(const ParametrisedCircuit& circuit, const RVector& theta, const NoiseModel& noise,
                            double alpha, const CMatrix& rho_in) {
  const FoldMix m = fold_mix(alpha);
  const int n = circuit.qubits();
  check_density_capacity(n);
  circuit.check_params(theta);
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  if (rho_in.rows() != d || rho_in.cols() != d) throw std::invalid_argument("run_boosted_circuit: state dimension mismatch");
  const auto idle = idle_channels(noise, n);
  CMatrix rho = rho_in;
  for (const auto& g : circuit.gates()) {
    if (!is_noisy(g, noise)) {
      apply_noisy_gate(rho, n, g, theta, noise, idle);
      continue;
    }
    // Folds are drawn independently per gate, so the average factorises.
    CMatrix low = rho;
    apply_folded(low, n, g, m.k_low, theta, noise, idle);
    if (m.w_high > 0.0) {
      CMatrix high = rho;
      apply_folded(high, n, g, m.k_high, theta, noise, idle);
      rho = (1.0 - m.w_high) * low + m.w_high * high;
    } else {
      rho = std::move(low);
    }
  }
  return rho;
}

QuantumChannel boosted_error_channel(const GateOp& gate, const RVector& theta, const NoiseModel& noise, double alpha) {
  const FoldMix m = fold_mix(alpha);
  const std::vector<int> targets = noise_targets(gate);
  const int k = static_cast<int>(targets.size());
  const GateOp g = localise(gate, targets);

  NoiseModel local = noise;
  local.strict = false;
  local.readout.clear();
  if (!noise.reduction.empty()) {
    local.reduction.clear();
    for (int q : targets) local.reduction.push_back(noise.reduction.at(static_cast<std::size_t>(q)));
  }
  const auto idle = idle_channels(local, k);

  const auto d = static_cast<Eigen::Index>(dim_of(k));
  CMatrix s(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) {
      CMatrix e = CMatrix::Zero(d, d);
      e(i, j) = 1.0;
      CMatrix low = e;
      apply_folded(low, k, g, m.k_low, theta, local, idle);
      if (m.w_high > 0.0) {
        CMatrix high = e;
        apply_folded(high, k, g, m.k_high, theta, local, idle);
        low = (1.0 - m.w_high) * low + m.w_high * high;
      }
      s.col(i + j * d) = Eigen::Map<const CVector>(low.data(), d * d);
    }
  const CMatrix u = g.dense(k, theta);
  const CMatrix undo = superop_left_right(u.adjoint(), u);
  QuantumChannel c = QuantumChannel::from_superoperator("boosted(" + gate.name + ")", s * undo, false);
  if (c.tp_error() > 1e-8) throw std::runtime_error("boosted_error_channel: composite map is not trace preserving");
  c.trace_preserving = true;
  return c;
}

double realised_boost_factor(const GateOp& gate, const RVector& theta, const NoiseModel& noise, double alpha) {
  const double base = effective_depolarizing_rate(boosted_error_channel(gate, theta, noise, 1.0));
  if (base <= 0.0) throw std::invalid_argument("realised_boost_factor: the gate carries no noise");
  return effective_depolarizing_rate(boosted_error_channel(gate, theta, noise, alpha)) / base;
}

}  // namespace nisq
