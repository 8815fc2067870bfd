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

#include <map>
#include <string>
#include <vector>

#include "nisq/core/linalg.hpp"
#include "nisq/core/pauli.hpp"

namespace nisq {

// Completely positive map in Kraus form on `arity` qubits.
//
// Channels built by the factories below are trace preserving. Operations
// used as quasi-probability basis elements (projections, for instance) may
// be trace decreasing; those carry trace_preserving = false.
struct QuantumChannel {
  std::string label;
  int arity = 1;
  std::vector<CMatrix> kraus;
  bool trace_preserving = true;

  // Validates shapes and, when `require_tp`, sum K^dagger K = I to 1e-10.
  static QuantumChannel from_kraus(std::string label, std::vector<CMatrix> kraus,
                                   bool require_tp = true);
  // Kraus operators recovered from a column-stacking superoperator.
  static QuantumChannel from_superoperator(std::string label, const CMatrix& s,
                                           bool require_tp = true);

  std::size_t dim() const { return dim_of(arity); }
  CMatrix apply(const CMatrix& rho) const;
  // Local action on `targets` of an n-qubit density matrix.
  CMatrix apply(const CMatrix& rho, int n_qubits, const std::vector<int>& targets) const;
  // || sum K^dagger K - I ||_max
  double tp_error() const;
  // Pauli-transfer matrix R_ij = Tr[P_i E(P_j)] / d in pauli_basis order.
  RMatrix ptm() const;
  // Column-stacking superoperator.
  CMatrix superoperator() const;
  // `next` after this channel.
  QuantumChannel then(const QuantumChannel& next) const;
  // This channel on the high qubits, `other` on the low ones.
  QuantumChannel tensor(const QuantumChannel& other) const;
  bool is_identity(double tol = 1e-12) const;
};

QuantumChannel identity_channel(int arity = 1);
QuantumChannel unitary_channel(const CMatrix& u, std::string label = "unitary");

// (1 - 3p/4) rho + (p/4)(X rho X + Y rho Y + Z rho Z), 0 <= p <= 4/3.
QuantumChannel depolarizing_channel(double p);
// (1 - p) rho + p I / d on `arity` qubits; matches the one-argument form for
// arity 1. Valid for 0 <= p <= d^2 / (d^2 - 1).
QuantumChannel depolarizing_channel(double p, int arity);
QuantumChannel amplitude_damping_channel(double gamma);
// (1 - p) rho + p Z rho Z
QuantumChannel dephasing_channel(double p);
QuantumChannel bit_flip_channel(double p);
// Stochastic Pauli channel; keys are letter strings of one common length.
QuantumChannel pauli_channel(const std::map<std::string, double>& probs);

// Pauli-twirled channel: stochastic Pauli channel with the same PTM diagonal.
QuantumChannel pauli_twirl(const QuantumChannel& channel);
// Error probabilities of a Pauli channel keyed by letters, read from the
// twirled form.
std::map<std::string, double> pauli_error_probabilities(const QuantumChannel& channel);

// 1 - (Tr R - 1)/(d^2 - 1): the depolarizing rate with the same average
// Pauli-transfer shrinkage.
double effective_depolarizing_rate(const QuantumChannel& channel);

// Superoperator column-stacking helpers.
CMatrix superop_left_right(const CMatrix& a, const CMatrix& b);  // rho -> a rho b

}  // namespace nisq
