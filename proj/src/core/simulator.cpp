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

#include "nisq/core/simulator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace nisq {

// --- QuantumState ----------------------------------------------------------

QuantumState QuantumState::zero(int n_qubits) { return basis(n_qubits, 0); }

QuantumState QuantumState::basis(int n_qubits, std::uint64_t index) {
  check_statevector_capacity(n_qubits);
  if (index >= dim_of(n_qubits)) throw std::out_of_range("QuantumState::basis: index out of range");
  QuantumState s;
  s.n_ = n_qubits;
  s.psi_ = CVector::Zero(static_cast<Eigen::Index>(dim_of(n_qubits)));
  s.psi_(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

QuantumState QuantumState::from_vector(const CVector& psi) {
  const int n = qubits_of(psi.size());
  if (n < 0) throw std::invalid_argument("QuantumState: dimension is not a power of two");
  check_statevector_capacity(n);
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw std::invalid_argument("QuantumState: statevector not normalised");
  QuantumState s;
  s.n_ = n;
  s.psi_ = psi;
  return s;
}

QuantumState QuantumState::from_density(const CMatrix& rho) {
  const int n = qubits_of(rho.rows());
  if (n < 0 || rho.rows() != rho.cols()) throw std::invalid_argument("QuantumState: density matrix must be 2^n square");
  check_density_capacity(n);
  if (!is_hermitian(rho, 1e-10)) throw std::invalid_argument("QuantumState: density matrix not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-10) throw std::invalid_argument("QuantumState: density matrix trace != 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) throw std::invalid_argument("QuantumState: density matrix not positive");
  QuantumState s;
  s.kind_ = Kind::Density;
  s.n_ = n;
  s.rho_ = rho;
  return s;
}

const CVector& QuantumState::vector() const {
  if (kind_ != Kind::Statevector) throw std::logic_error("QuantumState: not a statevector");
  return psi_;
}

CMatrix QuantumState::density() const {
  if (kind_ == Kind::Density) return rho_;
  check_density_capacity(n_);
  return psi_ * psi_.adjoint();
}

// --- kernels ---------------------------------------------------------------

namespace {

std::uint64_t mask_of(int n, const std::vector<int>& qubits) {
  std::uint64_t m = 0;
  for (int q : qubits) {
    if (q < 0 || q >= n) throw std::out_of_range("qubit index out of range");
    m |= std::uint64_t{1} << (n - 1 - q);
  }
  return m;
}

// Adjoint-trick helper: applies f to every column.
template <typename F>
void for_columns(CMatrix& m, F&& f) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    CVector col = m.col(j);
    f(col);
    m.col(j) = col;
  }
}

}  // namespace

void apply_matrix(CVector& psi, int n, const std::vector<int>& targets,
                  const std::vector<int>& controls, const CMatrix& m) {
  const int k = static_cast<int>(targets.size());
  const std::size_t local = dim_of(k);
  if (psi.size() != static_cast<Eigen::Index>(dim_of(n))) throw std::invalid_argument("apply_matrix: state dimension mismatch");
  if (m.rows() != static_cast<Eigen::Index>(local) || m.cols() != static_cast<Eigen::Index>(local))
    throw std::invalid_argument("apply_matrix: operator size mismatch");
  const std::uint64_t tmask = mask_of(n, targets);
  const std::uint64_t cmask = mask_of(n, controls);
  std::vector<std::uint64_t> offs(local, 0);
  for (std::size_t j = 0; j < local; ++j)
    for (int t = 0; t < k; ++t)
      if ((j >> (k - 1 - t)) & 1U) offs[j] |= std::uint64_t{1} << (n - 1 - targets[t]);
  CVector in(static_cast<Eigen::Index>(local)), out(static_cast<Eigen::Index>(local));
  for (std::uint64_t b = 0; b < std::uint64_t(psi.size()); ++b) {
    if ((b & tmask) != 0 || (b & cmask) != cmask) continue;
    for (std::size_t j = 0; j < local; ++j) in(static_cast<Eigen::Index>(j)) = psi(static_cast<Eigen::Index>(b | offs[j]));
    out.noalias() = m * in;
    for (std::size_t j = 0; j < local; ++j) psi(static_cast<Eigen::Index>(b | offs[j])) = out(static_cast<Eigen::Index>(j));
  }
}

void apply_pauli_rotation(CVector& psi, const PauliString& p, double phi,
                          const std::vector<int>& controls) {
  const int n = p.qubits();
  if (psi.size() != static_cast<Eigen::Index>(dim_of(n))) throw std::invalid_argument("apply_pauli_rotation: dimension mismatch");
  const std::uint64_t cmask = mask_of(n, controls);
  const double c = std::cos(phi), s = std::sin(phi);
  CVector out = psi;
  for (std::uint64_t b = 0; b < std::uint64_t(psi.size()); ++b) {
    if ((b & cmask) != cmask) continue;
    auto [a, t] = p.act(b);
    // (P psi)(t) = a psi(b); t stays inside the control subspace.
    out(static_cast<Eigen::Index>(t)) += (c - 1.0) * psi(static_cast<Eigen::Index>(t)) - Complex(0.0, s) * a * psi(static_cast<Eigen::Index>(b));
  }
  psi.swap(out);
}

void apply_gate(CVector& psi, int n, const GateOp& g, const RVector& theta) {
  if (g.kind == GateKind::Fixed)
    apply_matrix(psi, n, g.targets, g.controls, g.matrix);
  else
    apply_pauli_rotation(psi, g.pauli, g.angle(theta), g.controls);
}

void apply_gate(CMatrix& rho, int n, const GateOp& g, const RVector& theta) {
  for_columns(rho, [&](CVector& v) { apply_gate(v, n, g, theta); });
  rho.adjointInPlace();
  for_columns(rho, [&](CVector& v) { apply_gate(v, n, g, theta); });
  rho.adjointInPlace();
}

CMatrix conjugate_local(const CMatrix& rho, int n, const std::vector<int>& targets, const CMatrix& k) {
  CMatrix out = rho;
  for_columns(out, [&](CVector& v) { apply_matrix(v, n, targets, {}, k); });
  out.adjointInPlace();
  for_columns(out, [&](CVector& v) { apply_matrix(v, n, targets, {}, k); });
  out.adjointInPlace();
  return out;
}

// --- circuits ---------------------------------------------------------------

CVector apply_circuit(const ParametrisedCircuit& c, const RVector& theta, const CVector& psi) {
  c.check_params(theta);
  if (psi.size() != static_cast<Eigen::Index>(dim_of(c.qubits()))) throw std::invalid_argument("apply_circuit: register mismatch");
  CVector out = psi;
  for (const auto& g : c.gates()) apply_gate(out, c.qubits(), g, theta);
  return out;
}

CMatrix apply_circuit(const ParametrisedCircuit& c, const RVector& theta, const CMatrix& rho) {
  c.check_params(theta);
  check_density_capacity(c.qubits());
  if (rho.rows() != static_cast<Eigen::Index>(dim_of(c.qubits())) || rho.cols() != rho.rows())
    throw std::invalid_argument("apply_circuit: register mismatch");
  CMatrix out = rho;
  for (const auto& g : c.gates()) apply_gate(out, c.qubits(), g, theta);
  return out;
}

QuantumState apply_circuit(const ParametrisedCircuit& c, const RVector& theta, const QuantumState& s) {
  if (s.qubits() != c.qubits()) throw std::invalid_argument("apply_circuit: register mismatch");
  if (s.is_pure()) return QuantumState::from_vector(apply_circuit(c, theta, s.vector()));
  return QuantumState::from_density(apply_circuit(c, theta, s.density()));
}

CVector prepare(const ParametrisedCircuit& c, const RVector& theta) {
  return apply_circuit(c, theta, c.reference());
}

CMatrix circuit_unitary(const ParametrisedCircuit& c, const RVector& theta) {
  c.check_params(theta);
  const Eigen::Index d = static_cast<Eigen::Index>(dim_of(c.qubits()));
  CMatrix u = CMatrix::Identity(d, d);
  for_columns(u, [&](CVector& v) {
    for (const auto& g : c.gates()) apply_gate(v, c.qubits(), g, theta);
  });
  return u;
}

std::vector<CVector> derivative_states(const ParametrisedCircuit& c, const RVector& theta) {
  c.check_params(theta);
  const int n = c.qubits();
  const auto& gs = c.gates();
  std::vector<CVector> out(c.num_params(), CVector::Zero(static_cast<Eigen::Index>(dim_of(n))));
  CVector psi = c.reference();
  for (std::size_t j = 0; j < gs.size(); ++j) {
    apply_gate(psi, n, gs[j], theta);
    if (!gs[j].parametrised()) continue;
    for (const auto& gen : gs[j].generators()) {
      CVector v = gen.g * gen.sigma.apply(psi);
      for (std::size_t l = j + 1; l < gs.size(); ++l) apply_gate(v, n, gs[l], theta);
      out[gs[j].slot] += v;
    }
  }
  return out;
}

// --- measurement --------------------------------------------------------------

double expectation(const CVector& psi, const PauliSum& obs) {
  obs.require_hermitian("expectation");
  return obs.expectation(psi).real();
}

double expectation(const CMatrix& rho, const PauliSum& obs) {
  obs.require_hermitian("expectation");
  return obs.expectation(rho).real();
}

double expectation(const QuantumState& s, const PauliSum& obs) {
  if (s.qubits() != obs.qubits()) throw std::invalid_argument("expectation: register mismatch");
  return s.is_pure() ? expectation(s.vector(), obs) : expectation(s.density(), obs);
}

SampledEstimate sampled_expectation(const QuantumState& s, const PauliSum& obs,
                                    const ShotSettings& settings) {
  if (settings.shots == 0) throw std::invalid_argument("sampled_expectation: zero shots");
  if (s.qubits() != obs.qubits()) throw std::invalid_argument("sampled_expectation: register mismatch");
  Rng rng(settings.seed);
  const double shots = double(settings.shots);
  double value = 0.0, var = 0.0;
  for (const auto& [w, p] : obs.real_terms()) {
    if (p.is_identity_letters()) {
      value += w;
      continue;
    }
    const double e = s.is_pure() ? p.expectation(s.vector()).real() : p.expectation(s.density()).real();
    const double p_plus = std::clamp(0.5 * (1.0 + e), 0.0, 1.0);
    std::uint64_t plus = 0;
    for (std::uint64_t i = 0; i < settings.shots; ++i)
      if (rng.uniform() < p_plus) ++plus;
    const double mean = (2.0 * double(plus) - shots) / shots;
    const double sample_var = settings.shots > 1 ? (1.0 - mean * mean) * shots / (shots - 1.0) : 0.0;
    value += w * mean;
    var += w * w * sample_var / shots;
  }
  return {value, std::sqrt(std::max(var, 0.0))};
}

RVector probabilities(const QuantumState& s) {
  if (s.is_pure()) return s.vector().cwiseAbs2();
  return s.density().diagonal().real().cwiseMax(0.0);
}

double hadamard_test_exact(const ParametrisedCircuit& u, const RVector& theta_u,
                           const ParametrisedCircuit& v, const RVector& theta_v,
                           double phase, const CVector& ref) {
  if (u.qubits() != v.qubits()) throw std::invalid_argument("hadamard_test: register mismatch");
  CVector a = apply_circuit(u, theta_u, ref);
  CVector b = apply_circuit(v, theta_v, ref);
  return (std::polar(1.0, phase) * b.dot(a)).real();
}

double hadamard_test_circuit(const ParametrisedCircuit& u, const RVector& theta_u,
                             const ParametrisedCircuit& v, const RVector& theta_v,
                             double phase, const CVector& ref) {
  if (u.qubits() != v.qubits()) throw std::invalid_argument("hadamard_test: register mismatch");
  u.check_params(theta_u);
  v.check_params(theta_v);
  const int n = u.qubits();
  std::vector<int> map(n);
  for (int q = 0; q < n; ++q) map[q] = q + 1;
  ParametrisedCircuit c(n + 1);
  CMatrix ph = CMatrix::Identity(2, 2);
  ph(1, 1) = std::polar(1.0, phase);
  c.h(0).unitary("P", ph, {0});
  c.append(u.embedded(n + 1, map).controlled_by(0));
  c.x(0);
  c.append(v.embedded(n + 1, map).controlled_by(0), u.num_params());
  c.x(0).h(0);
  RVector theta(u.num_params() + v.num_params());
  theta << theta_u, theta_v;
  CVector anc = CVector::Zero(2);
  anc(0) = 1.0;
  CVector out = apply_circuit(c, theta, CVector(kron(anc, ref)));
  return PauliString::single(n + 1, 0, 'Z').expectation(out).real();
}

namespace {

QuantumState joint(const QuantumState& a, const QuantumState& b, bool with_ancilla) {
  CVector anc = CVector::Zero(2);
  anc(0) = 1.0;
  if (a.is_pure() && b.is_pure()) {
    CVector v = kron(a.vector(), b.vector());
    return QuantumState::from_vector(with_ancilla ? CVector(kron(anc, v)) : v);
  }
  const int n = a.qubits() + b.qubits() + (with_ancilla ? 1 : 0);
  check_density_capacity(n);
  CMatrix r = kron(a.density(), b.density());
  if (with_ancilla) r = kron(CMatrix(anc * anc.adjoint()), r);
  QuantumState s = QuantumState::from_density(r);
  return s;
}

SampledEstimate sample_signed(const RVector& probs, const std::vector<double>& sign,
                              const std::optional<ShotSettings>& settings) {
  double exact = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) exact += probs(i) * sign[i];
  if (!settings) return {exact, 0.0};
  if (settings->shots == 0) throw std::invalid_argument("swap_test: zero shots");
  Rng rng(settings->seed);
  std::vector<double> w(probs.data(), probs.data() + probs.size());
  double sum = 0.0, sum2 = 0.0;
  for (std::uint64_t i = 0; i < settings->shots; ++i) {
    const double x = sign[rng.discrete(w)];
    sum += x;
    sum2 += x * x;
  }
  const double s = double(settings->shots);
  const double mean = sum / s;
  const double var = settings->shots > 1 ? (sum2 - s * mean * mean) / (s - 1.0) : 0.0;
  return {mean, std::sqrt(std::max(var, 0.0) / s)};
}

}  // namespace

SampledEstimate swap_test(const QuantumState& rho, const QuantumState& sigma, SwapMode mode,
                          const std::optional<ShotSettings>& settings) {
  if (rho.qubits() != sigma.qubits()) throw std::invalid_argument("swap_test: dimension mismatch");
  const int n = rho.qubits();
  if (mode == SwapMode::Ancilla) {
    ParametrisedCircuit c(2 * n + 1);
    c.h(0);
    for (int q = 0; q < n; ++q) c.unitary("CSWAP", gates::swap(), {1 + q, 1 + n + q}, {0});
    c.h(0);
    QuantumState out = apply_circuit(c, RVector(), joint(rho, sigma, true));
    RVector p = probabilities(out);
    const std::uint64_t top = std::uint64_t{1} << (2 * n);
    std::vector<double> sign(p.size());
    for (Eigen::Index b = 0; b < p.size(); ++b) sign[b] = (std::uint64_t(b) & top) ? -1.0 : 1.0;
    return sample_signed(p, sign, settings);
  }
  ParametrisedCircuit c(2 * n);
  for (int q = 0; q < n; ++q) c.cnot(q, n + q);
  for (int q = 0; q < n; ++q) c.h(q);
  QuantumState out = apply_circuit(c, RVector(), joint(rho, sigma, false));
  RVector p = probabilities(out);
  std::vector<double> sign(p.size());
  for (Eigen::Index b = 0; b < p.size(); ++b) {
    const std::uint64_t hi = std::uint64_t(b) >> n;
    const std::uint64_t lo = std::uint64_t(b) & ((std::uint64_t{1} << n) - 1);
    // Each qubit pair reading "11" contributes a factor -1.
    sign[b] = (std::popcount(hi & lo) % 2) ? -1.0 : 1.0;
  }
  return sample_signed(p, sign, settings);
}

}  // namespace nisq
