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

#include <cstdint>
#include <string>
#include <vector>

#include "nisq/core/circuit.hpp"
#include "nisq/vqo/optimizer.hpp"

namespace nisq {

struct SpectrumResult {
  std::string method;
  std::vector<double> energies;       // ascending
  std::vector<RVector> params;        // per level, when the level is a circuit state
  std::vector<CVector> coefficients;  // per level, subspace coefficients c
  std::vector<CVector> states;        // per level, the state vector
  std::vector<double> residuals;      // || H|E> - E|E> ||
  bool flagged = false;
  std::string flag;
};

// 2 sum_a |f_a| over the non-identity terms: an upper bound on the spectral
// spread, so it exceeds any gap.
double default_penalty_weight(const PauliSum& h);

// Sequential VQE on H + alpha sum_j |E_j><E_j| for levels 0..k. alpha <= 0
// selects default_penalty_weight. A level overlapping an earlier one by more
// than 0.5 means alpha was too small; the result is flagged.
SpectrumResult excited_by_overlap(const PauliSum& h, const ParametrisedCircuit& ansatz, double alpha, int k,
                                  const OptimizerConfig& config, std::uint64_t seed);

// Generalised eigenproblem in span{P_a |G>}: H_ab = <G|P_a H P_b|G>,
// S_ab = <G|P_a P_b|G>, S regularised at `threshold`.
SpectrumResult subspace_expansion(const CVector& state, const PauliSum& h, const std::vector<PauliString>& expansion,
                                  double threshold = 1e-8);

// Computational basis states |0>, |1>, ..., |count - 1>.
std::vector<CVector> computational_inputs(int n_qubits, int count);

// Stage 1 minimises sum_j <j|U^dagger H U|j> over the first k + 1 basis
// inputs. Stage 2 maximises the energy over unit vectors in the span of the
// stage-1 states, which isolates level k; repeating on the orthogonal
// complement yields levels k - 1 .. 0.
SpectrumResult ssvqe(const PauliSum& h, const ParametrisedCircuit& ansatz, int k, const OptimizerConfig& config,
                     std::uint64_t seed);
// Stage-1 cost: sum over inputs of <in|U^dagger H U|in>.
double ssvqe_stage1_cost(const PauliSum& h, const ParametrisedCircuit& ansatz, const RVector& theta,
                         const std::vector<CVector>& inputs);

// Subspace matrix H_ab = <phi_a|H|phi_b> with |phi_a> = U|a>, assembled only
// from energies of prepared states: diagonals directly, real parts of the
// off-diagonals from U(|b> +- |a>)/sqrt 2 and imaginary parts from
// U(|b> +- i|a>)/sqrt 2.
CMatrix mc_vqe_matrix(const PauliSum& h, const ParametrisedCircuit& u, const RVector& theta,
                      const std::vector<CVector>& inputs);
SpectrumResult mc_vqe(const PauliSum& h, const ParametrisedCircuit& u, const RVector& theta,
                      const std::vector<CVector>& inputs);

}  // namespace nisq
