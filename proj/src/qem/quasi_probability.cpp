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


#include "nisq/qem/quasi_probability.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "nisq/core/random.hpp"
#include "nisq/core/simulator.hpp"

namespace nisq {

double QuasiProbabilityDecomposition::cost() const {
  double c = 0.0;
  for (double v : q) c += std::abs(v);
  return c;
}

std::vector<double> QuasiProbabilityDecomposition::probabilities() const {
  const double c = cost();
  std::vector<double> p;
  for (double v : q) p.push_back(c > 0.0 ? std::abs(v) / c : 0.0);
  return p;
}

RMatrix QuasiProbabilityDecomposition::ptm() const {
  if (basis.empty()) throw std::logic_error("QuasiProbabilityDecomposition: empty basis");
  RMatrix r = RMatrix::Zero(basis[0].ptm().rows(), basis[0].ptm().cols());
  for (std::size_t i = 0; i < basis.size(); ++i) r += q[i] * basis[i].ptm();
  return r;
}

std::vector<QuantumChannel> standard_basis(int arity) {
  if (arity == 2) {
    const auto one = standard_basis(1);
    std::vector<QuantumChannel> out;
    for (const auto& a : one)
      for (const auto& b : one) {
        QuantumChannel c = a.tensor(b);
        c.trace_preserving = a.trace_preserving && b.trace_preserving;
        out.push_back(std::move(c));
      }
    return out;
  }
  if (arity != 1) throw std::invalid_argument("standard_basis: arity must be 1 or 2");
  const CMatrix i2 = CMatrix::Identity(2, 2);
  const CMatrix x = PauliString::parse("X").matrix();
  const CMatrix y = PauliString::parse("Y").matrix();
  const CMatrix z = PauliString::parse("Z").matrix();
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<QuantumChannel> out;
  out.push_back(unitary_channel(i2, "I"));
  out.push_back(unitary_channel(x, "X"));
  out.push_back(unitary_channel(y, "Y"));
  out.push_back(unitary_channel(z, "Z"));
  out.push_back(unitary_channel(r * (i2 + kI * x), "Rx"));
  out.push_back(unitary_channel(r * (i2 + kI * y), "Ry"));
  out.push_back(unitary_channel(r * (i2 + kI * z), "Rz"));
  out.push_back(unitary_channel(r * (y + z), "Ryz"));
  out.push_back(unitary_channel(r * (z + x), "Rzx"));
  out.push_back(unitary_channel(r * (x + y), "Rxy"));
  auto proj = [](const char* label, const CMatrix& k) { return QuantumChannel::from_kraus(label, {k}, false); };
  out.push_back(proj("Px", 0.5 * (i2 + x)));
  out.push_back(proj("Py", 0.5 * (i2 + y)));
  out.push_back(proj("Pz", 0.5 * (i2 + z)));
  out.push_back(proj("Pyz", 0.5 * (y + kI * z)));
  out.push_back(proj("Pzx", 0.5 * (z + kI * x)));
  out.push_back(proj("Pxy", 0.5 * (x + kI * y)));
  for (std::size_t k = 10; k < out.size(); ++k) out[k].trace_preserving = false;
  return out;
}

std::vector<QuantumChannel> pauli_basis_operations(int arity) {
  std::vector<QuantumChannel> out;
  for (const auto& p : pauli_basis(arity)) out.push_back(unitary_channel(p.matrix(), p.letters()));
  return out;
}

QuasiProbabilityDecomposition decompose_recovery(const QuantumChannel& noise, const QuantumChannel& target,
                                                 const std::vector<QuantumChannel>& basis) {
  if (basis.empty()) throw std::invalid_argument("decompose_recovery: empty basis");
  if (target.arity != noise.arity) throw std::invalid_argument("decompose_recovery: target and noise arity differ");
  const RMatrix rn = noise.ptm();
  if (inverse_condition(rn) < 1e-12) throw std::invalid_argument("decompose_recovery: noise channel is not invertible");
  const RMatrix want = target.ptm() * rn.inverse();
  const Eigen::Index d = want.size();
  RMatrix a(d, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].arity != noise.arity) throw std::invalid_argument("decompose_recovery: basis arity mismatch");
    const RMatrix r = basis[i].ptm();
    a.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const RVector>(r.data(), d);
  }
  const RVector b = Eigen::Map<const RVector>(want.data(), d);
  Eigen::CompleteOrthogonalDecomposition<RMatrix> cod(a);
  cod.setThreshold(1e-12);
  const RVector q = cod.solve(b);
  if ((a * q - b).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, b.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("decompose_recovery: basis does not span the required map");
  QuasiProbabilityDecomposition out;
  out.basis = basis;
  out.q.assign(q.data(), q.data() + q.size());
  // Exact zeros keep sampling and enumeration away from dead branches.
  for (double& v : out.q)
    if (std::abs(v) < 1e-15) v = 0.0;
  return out;
}

QuasiProbabilityDecomposition invert_channel(const QuantumChannel& noise, const std::vector<QuantumChannel>& basis) {
  return decompose_recovery(noise, identity_channel(noise.arity), basis);
}

double depolarizing_inverse_cost(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("depolarizing_inverse_cost: p must lie in [0, 1)");
  return (p + 2.0) / (2.0 - 2.0 * p);
}

QuantumChannel anticommuting_part(const QuantumChannel& noise, const PauliString& symmetry,
                                  const std::vector<int>& targets) {
  if (static_cast<int>(targets.size()) != noise.arity)
    throw std::invalid_argument("anticommuting_part: one target per channel qubit required");
  const RMatrix r = noise.ptm();
  RMatrix off = r;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() > 1e-10) throw std::invalid_argument("anticommuting_part: noise is not a Pauli channel");
  PauliString local(noise.arity);
  for (std::size_t i = 0; i < targets.size(); ++i) local.set_letter(static_cast<int>(i), symmetry.letter(targets[i]));
  std::map<std::string, double> kept;
  double identity = 0.0;
  for (const auto& [letters, p] : pauli_error_probabilities(noise)) {
    const PauliString e = PauliString::parse(letters);
    if (!e.is_identity_letters() && !e.commutes_with(local))
      kept[letters] = p;
    else
      identity += p;
  }
  kept[std::string(static_cast<std::size_t>(noise.arity), 'I')] = identity;
  QuantumChannel c = pauli_channel(kept);
  c.label = "anticommuting(" + noise.label + ")";
  return c;
}

GateDecompositions decompose_circuit_noise(const ParametrisedCircuit& circuit, const NoiseModel& noise,
                                           const std::vector<QuantumChannel>& basis) {
  GateDecompositions out;
  std::map<const QuantumChannel*, QuasiProbabilityDecomposition> cache;
  for (const auto& g : circuit.gates()) {
    const QuantumChannel* c = noise.channel_for(g);
    if (!c) {
      out.emplace_back();
      continue;
    }
    auto it = cache.find(c);
    if (it == cache.end()) {
      std::vector<QuantumChannel> b = basis;
      if (!b.empty() && b[0].arity != c->arity) b = standard_basis(c->arity);
      it = cache.emplace(c, invert_channel(*c, b)).first;
    }
    out.push_back(it->second);
  }
  return out;
}

GateDecompositions partial_circuit_decompositions(const ParametrisedCircuit& circuit, const NoiseModel& noise,
                                                  const PauliString& symmetry) {
  if (symmetry.qubits() != circuit.qubits()) throw std::invalid_argument("partial decompositions: symmetry register mismatch");
  GateDecompositions out;
  for (const auto& g : circuit.gates()) {
    const QuantumChannel* c = noise.channel_for(g);
    if (!c) {
      out.emplace_back();
      continue;
    }
    const QuantumChannel target = anticommuting_part(*c, symmetry, noise_targets(g));
    out.push_back(decompose_recovery(*c, target, pauli_basis_operations(c->arity)));
  }
  return out;
}

namespace {

void check_inputs(const ParametrisedCircuit& circuit, const RVector& theta, const NoiseModel& noise,
                  const GateDecompositions& decompositions) {
  check_density_capacity(circuit.qubits());
  circuit.check_params(theta);
  if (decompositions.size() != circuit.size())
    throw std::invalid_argument("quasi-probability: one decomposition slot per gate required");
  if (noise.continuous && !noise.continuous->jumps.empty() && noise.continuous->duration > 0.0)
    throw std::invalid_argument("quasi-probability: continuous idle noise has no decomposition");
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const QuantumChannel* c = noise.channel_for(circuit.gates()[i]);
    if (c && !decompositions[i]) throw std::invalid_argument("quasi-probability: gate '" + circuit.gates()[i].name + "' is noisy but has no decomposition");
    if (decompositions[i]) {
      const auto& d = *decompositions[i];
      if (d.basis.size() != d.q.size() || d.basis.empty())
        throw std::invalid_argument("quasi-probability: malformed decomposition");
    }
  }
}

CMatrix initial_density(const ParametrisedCircuit& circuit) {
  const CVector r = circuit.reference();
  return r * r.adjoint();
}

// Gate then its noise channel.
void noisy_gate(CMatrix& rho, int n, const GateOp& g, const RVector& theta, const NoiseModel& noise) {
  apply_gate(rho, n, g, theta);
  if (const QuantumChannel* c = noise.channel_for(g)) rho = c->apply(rho, n, noise_targets(g));
}

double total_cost(const GateDecompositions& decompositions) {
  double c = 1.0;
  for (const auto& d : decompositions)
    if (d) c *= d->cost();
  return c;
}

}  // namespace

CMatrix quasi_probability_state(const ParametrisedCircuit& circuit, const RVector& theta, const NoiseModel& noise,
                                const GateDecompositions& decompositions) {
  check_inputs(circuit, theta, noise, decompositions);
  double branches = 1.0;
  for (const auto& d : decompositions)
    if (d) branches *= double(d->q.size());
  if (branches > 1e8) throw std::invalid_argument("quasi_probability_state: too many branches to enumerate");
  const int n = circuit.qubits();
  CMatrix acc = CMatrix::Zero(static_cast<Eigen::Index>(dim_of(n)), static_cast<Eigen::Index>(dim_of(n)));
  std::function<void(std::size_t, CMatrix, double)> walk = [&](std::size_t i, CMatrix rho, double w) {
    if (i == circuit.size()) {
      acc += w * rho;
      return;
    }
    const GateOp& g = circuit.gates()[i];
    noisy_gate(rho, n, g, theta, noise);
    if (!decompositions[i]) {
      walk(i + 1, std::move(rho), w);
      return;
    }
    const auto& d = *decompositions[i];
    const auto targets = noise_targets(g);
    for (std::size_t j = 0; j < d.q.size(); ++j)
      if (d.q[j] != 0.0) walk(i + 1, d.basis[j].apply(rho, n, targets), w * d.q[j]);
  };
  walk(0, initial_density(circuit), 1.0);
  return acc;
}

MitigatedEstimate quasi_probability_exact(const ParametrisedCircuit& circuit, const RVector& theta,
                                          const NoiseModel& noise, const PauliSum& observable,
                                          const GateDecompositions& decompositions) {
  observable.require_hermitian("quasi_probability_exact");
  const CMatrix rho = quasi_probability_state(circuit, theta, noise, decompositions);
  MitigatedEstimate e;
  e.method = "quasi_probability_exact";
  e.value = observable.expectation(rho).real();
  const double c = total_cost(decompositions);
  e.gamma = c * c;
  return e;
}

MitigatedEstimate quasi_probability_estimate(const ParametrisedCircuit& circuit, const RVector& theta,
                                             const NoiseModel& noise, const PauliSum& observable,
                                             const GateDecompositions& decompositions,
                                             const QuasiProbabilitySettings& settings) {
  check_inputs(circuit, theta, noise, decompositions);
  observable.require_hermitian("quasi_probability_estimate");
  if (settings.shots == 0) throw std::invalid_argument("quasi_probability_estimate: shot budget is zero");
  if (settings.block == 0) throw std::invalid_argument("quasi_probability_estimate: block size is zero");
  const int n = circuit.qubits();
  const auto terms = observable.real_terms();
  const double c_tot = total_cost(decompositions);
  std::vector<std::vector<double>> probs(decompositions.size());
  for (std::size_t i = 0; i < decompositions.size(); ++i)
    if (decompositions[i]) probs[i] = decompositions[i]->probabilities();
  const CMatrix rho0 = initial_density(circuit);

  // Welford accumulation in shot order; blocks only fix the RNG streams.
  double mean = 0.0, m2 = 0.0;
  std::uint64_t count = 0;
  for (std::uint64_t start = 0, b = 0; start < settings.shots; start += settings.block, ++b) {
    Rng rng(derive_seed(settings.seed, b));
    const std::uint64_t end = std::min(settings.shots, start + settings.block);
    for (std::uint64_t s = start; s < end; ++s) {
      CMatrix rho = rho0;
      double sign = 1.0;
      for (std::size_t i = 0; i < circuit.size(); ++i) {
        const GateOp& g = circuit.gates()[i];
        noisy_gate(rho, n, g, theta, noise);
        if (decompositions[i]) {
          const auto& d = *decompositions[i];
          const std::size_t j = rng.discrete(probs[i]);
          if (d.q[j] < 0.0) sign = -sign;
          rho = d.basis[j].apply(rho, n, noise_targets(g));
        }
      }
      // Trace-decreasing branches survive with probability Tr rho.
      const double t = rho.trace().real();
      double x = 0.0;
      for (const auto& [coeff, p] : terms) {
        const double ev = p.expectation(rho).real();
        const double u = rng.uniform();
        if (u < 0.5 * (t + ev))
          x += coeff;
        else if (u < t)
          x -= coeff;
      }
      const double v = sign * c_tot * x;
      ++count;
      const double delta = v - mean;
      mean += delta / double(count);
      m2 += delta * (v - mean);
    }
  }
  MitigatedEstimate e;
  e.method = "quasi_probability";
  e.value = mean;
  e.std_error = count > 1 ? std::sqrt(m2 / double(count - 1) / double(count)) : 0.0;
  e.gamma = c_tot * c_tot;
  return e;
}

}  // namespace nisq
