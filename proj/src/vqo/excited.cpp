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

#include "nisq/vqo/excited.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nisq/core/random.hpp"
#include "nisq/core/simulator.hpp"
#include "nisq/vqo/cost.hpp"
#include "nisq/vqo/gen_eigen.hpp"
#include "nisq/vqo/vqe.hpp"

namespace nisq {

namespace {

double residual(const PauliSum& h, const CVector& psi, double e) { return (h.apply(psi) - e * psi).norm(); }

// Orders every per-level field of `r` by energy.
void sort_levels(SpectrumResult& r) {
  std::vector<std::size_t> idx(r.energies.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return r.energies[a] < r.energies[b]; });
  auto permute = [&](auto& v) {
    if (v.size() != idx.size()) return;
    auto copy = v;
    for (std::size_t i = 0; i < idx.size(); ++i) v[i] = copy[idx[i]];
  };
  permute(r.energies);
  permute(r.params);
  permute(r.coefficients);
  permute(r.states);
  permute(r.residuals);
}

void flag(SpectrumResult& r, const std::string& why) {
  if (r.flagged) return;
  r.flagged = true;
  r.flag = why;
}

}  // namespace

double default_penalty_weight(const PauliSum& h) {
  double s = 0.0;
  for (const auto& [c, p] : h.real_terms())
    if (!p.is_identity_letters()) s += std::abs(c);
  return 2.0 * s;
}

SpectrumResult excited_by_overlap(const PauliSum& h, const ParametrisedCircuit& ansatz, double alpha, int k,
                                  const OptimizerConfig& config, std::uint64_t seed) {
  if (k < 0) throw std::invalid_argument("excited_by_overlap: k must be non-negative");
  if (k + 1 > static_cast<int>(dim_of(h.qubits())))
    throw std::invalid_argument("excited_by_overlap: more levels than the Hilbert space holds");
  if (alpha <= 0.0) alpha = default_penalty_weight(h);
  SpectrumResult out;
  out.method = "overlap-penalty";
  std::vector<Penalty> penalties;
  for (int level = 0; level <= k; ++level) {
    const CostFunction cost =
        level == 0 ? CostFunction::expectation(h) : CostFunction::penalised(h, penalties);
    VqeResult r = minimise(cost, ansatz, config, derive_seed(seed, std::uint64_t(level)));
    const CVector psi = prepare(ansatz, r.params);
    const double e = expectation(psi, h);
    for (std::size_t j = 0; j < penalties.size(); ++j)
      if (std::norm(penalties[j].state.dot(psi)) > 0.5)
        flag(out, "level " + std::to_string(level) + " overlaps level " + std::to_string(j) +
                      " by more than 0.5; increase alpha");
    if (r.flagged) flag(out, "level " + std::to_string(level) + ": " + r.flag);
    out.energies.push_back(e);
    out.params.push_back(r.params);
    out.states.push_back(psi);
    out.residuals.push_back(residual(h, psi, e));
    penalties.push_back({psi, alpha});
  }
  sort_levels(out);
  return out;
}

SpectrumResult subspace_expansion(const CVector& state, const PauliSum& h, const std::vector<PauliString>& expansion,
                                  double threshold) {
  h.require_hermitian("subspace_expansion");
  if (state.size() != static_cast<Eigen::Index>(dim_of(h.qubits())))
    throw std::invalid_argument("subspace_expansion: state dimension mismatch");
  if (expansion.empty()) throw std::invalid_argument("subspace_expansion: empty expansion set");
  bool has_identity = false;
  for (const auto& p : expansion) {
    if (p.qubits() != h.qubits()) throw std::invalid_argument("subspace_expansion: operator register mismatch");
    has_identity = has_identity || p.is_identity_letters();
  }
  if (!has_identity) throw std::invalid_argument("subspace_expansion: expansion set must contain the identity");
  const CVector g = state / state.norm();
  const auto m = static_cast<Eigen::Index>(expansion.size());
  CMatrix basis(g.size(), m);
  for (Eigen::Index a = 0; a < m; ++a) basis.col(a) = expansion[static_cast<std::size_t>(a)].apply(g);
  CMatrix hb(g.size(), m);
  for (Eigen::Index a = 0; a < m; ++a) hb.col(a) = h.apply(basis.col(a));
  const CMatrix ht = basis.adjoint() * hb;
  const CMatrix st = basis.adjoint() * basis;
  const GenEigenResult ge = generalized_eigen(ht, st, threshold);
  SpectrumResult out;
  out.method = "subspace-expansion";
  for (Eigen::Index i = 0; i < ge.values.size(); ++i) {
    const CVector c = ge.vectors.col(i);
    CVector psi = basis * c;
    psi /= psi.norm();
    out.energies.push_back(ge.values(i));
    out.coefficients.push_back(c);
    out.states.push_back(psi);
    out.residuals.push_back(residual(h, psi, ge.values(i)));
  }
  return out;
}

std::vector<CVector> computational_inputs(int n, int count) {
  if (count < 1 || count > static_cast<int>(dim_of(n)))
    throw std::invalid_argument("computational_inputs: count out of range");
  std::vector<CVector> out;
  for (int i = 0; i < count; ++i) {
    CVector e = CVector::Zero(static_cast<Eigen::Index>(dim_of(n)));
    e(i) = 1.0;
    out.push_back(e);
  }
  return out;
}

double ssvqe_stage1_cost(const PauliSum& h, const ParametrisedCircuit& ansatz, const RVector& theta,
                         const std::vector<CVector>& inputs) {
  double s = 0.0;
  for (const auto& in : inputs) s += expectation(apply_circuit(ansatz, theta, in), h);
  return s;
}

SpectrumResult ssvqe(const PauliSum& h, const ParametrisedCircuit& ansatz, int k, const OptimizerConfig& config,
                     std::uint64_t seed) {
  if (k < 0) throw std::invalid_argument("ssvqe: k must be non-negative");
  if (h.qubits() != ansatz.qubits()) throw std::invalid_argument("ssvqe: register mismatch");
  const std::vector<CVector> inputs = computational_inputs(h.qubits(), k + 1);
  const CostFunction cost = CostFunction::expectation(h);
  std::vector<ParametrisedCircuit> fed;
  for (const auto& in : inputs) {
    ParametrisedCircuit c = ansatz;
    c.set_reference(in);
    fed.push_back(c);
  }
  auto f = [&](const RVector& t) { return ssvqe_stage1_cost(h, ansatz, t, inputs); };
  auto grad = [&](const RVector& t) {
    RVector g = RVector::Zero(ansatz.num_params());
    for (const auto& c : fed) g += cost_gradient(cost, c, t, config.gradient, config.fd_step);
    return g;
  };
  config.validate();
  OptimizeResult best;
  bool have = false;
  for (int r = 0; r <= config.restarts; ++r) {
    OptimizeResult o = gradient_descent(f, grad, random_parameters(ansatz.num_params(), derive_seed(seed, std::uint64_t(r))), config);
    if (!have || o.value < best.value) {
      best = o;
      have = true;
    }
  }
  SpectrumResult out;
  out.method = "ssvqe";
  if (!best.converged) flag(out, "stage 1 did not converge within max_iters");

  // Stage 2 on the span of the stage-1 states.
  const CMatrix ht = mc_vqe_matrix(h, ansatz, best.params, inputs);
  const auto m = ht.rows();
  CMatrix psi(static_cast<Eigen::Index>(dim_of(h.qubits())), m);
  for (Eigen::Index j = 0; j < m; ++j) psi.col(j) = apply_circuit(ansatz, best.params, inputs[static_cast<std::size_t>(j)]);
  // Shifted power iteration is gradient ascent of c^dagger H c on the unit
  // sphere with step 1 / shift.
  const double shift = ht.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
  const CMatrix ascent = ht + shift * CMatrix::Identity(m, m);
  std::vector<CVector> found;
  for (Eigen::Index level = m - 1; level >= 0; --level) {
    CVector c(m);
    for (Eigen::Index j = 0; j < m; ++j) c(j) = Complex(1.0 / (j + 1.0), 0.1 * j);
    auto deflate = [&](CVector& v) {
      for (const auto& u : found) v -= u * u.dot(v);
      v /= v.norm();
    };
    deflate(c);
    bool converged = false;
    for (int it = 0; it < 200000; ++it) {
      CVector next = ascent * c;
      deflate(next);
      // Component of the update orthogonal to c; blind to global phase.
      const double change = (next - c * (c.dot(next))).norm();
      c = next;
      if (change < 1e-13) {
        converged = true;
        break;
      }
    }
    if (!converged) flag(out, "stage 2 did not converge for level " + std::to_string(level));
    found.push_back(c);
    const double e = c.dot(ht * c).real();
    CVector state = psi * c;
    state /= state.norm();
    out.energies.push_back(e);
    out.coefficients.push_back(c);
    out.params.push_back(best.params);
    out.states.push_back(state);
    out.residuals.push_back(residual(h, state, e));
  }
  sort_levels(out);
  return out;
}

CMatrix mc_vqe_matrix(const PauliSum& h, const ParametrisedCircuit& u, const RVector& theta,
                      const std::vector<CVector>& inputs) {
  h.require_hermitian("mc_vqe");
  if (inputs.empty()) throw std::invalid_argument("mc_vqe: need at least one input state");
  const auto d = static_cast<Eigen::Index>(dim_of(u.qubits()));
  for (const auto& in : inputs)
    if (in.size() != d) throw std::invalid_argument("mc_vqe: input dimension mismatch");
  const auto m = static_cast<Eigen::Index>(inputs.size());
  auto energy = [&](const CVector& in) { return expectation(apply_circuit(u, theta, in), h); };
  CMatrix out(m, m);
  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index a = 0; a < m; ++a) {
    const CVector& ia = inputs[static_cast<std::size_t>(a)];
    out(a, a) = energy(ia);
    for (Eigen::Index b = a + 1; b < m; ++b) {
      const CVector& ib = inputs[static_cast<std::size_t>(b)];
      // z = <phi_b|H|phi_a>; 2 Re z and -2 Im z from the interference pairs.
      const double re = 0.5 * (energy(r * (ib + ia)) - energy(r * (ib - ia)));
      const double im = -0.5 * (energy(r * (ib + kI * ia)) - energy(r * (ib - kI * ia)));
      const Complex z(re, im);
      out(b, a) = z;
      out(a, b) = std::conj(z);
    }
  }
  return out;
}

SpectrumResult mc_vqe(const PauliSum& h, const ParametrisedCircuit& u, const RVector& theta,
                      const std::vector<CVector>& inputs) {
  const CMatrix ht = mc_vqe_matrix(h, u, theta, inputs);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(ht);
  SpectrumResult out;
  out.method = "mc-vqe";
  for (Eigen::Index i = 0; i < ht.rows(); ++i) {
    const CVector c = es.eigenvectors().col(i);
    CVector psi = CVector::Zero(static_cast<Eigen::Index>(dim_of(u.qubits())));
    for (Eigen::Index j = 0; j < ht.rows(); ++j) psi += c(j) * inputs[static_cast<std::size_t>(j)];
    psi = apply_circuit(u, theta, psi);
    psi /= psi.norm();
    const double e = es.eigenvalues()(i);
    out.energies.push_back(e);
    out.coefficients.push_back(c);
    out.params.push_back(theta);
    out.states.push_back(psi);
    out.residuals.push_back(residual(h, psi, e));
  }
  return out;
}

}  // namespace nisq
