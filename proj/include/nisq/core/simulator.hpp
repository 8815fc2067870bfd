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
#include <optional>
#include <vector>

#include "nisq/core/circuit.hpp"
#include "nisq/core/linalg.hpp"
#include "nisq/core/pauli.hpp"
#include "nisq/core/random.hpp"

namespace nisq {

// Dense statevector or density matrix.
class QuantumState {
 public:
  enum class Kind { Statevector, Density };

  QuantumState() = default;
  static QuantumState zero(int n_qubits);
  static QuantumState basis(int n_qubits, std::uint64_t index);
  // Validates norm 1 within 1e-10.
  static QuantumState from_vector(const CVector& psi);
  // Validates Hermiticity, unit trace and eigenvalues >= -1e-10.
  static QuantumState from_density(const CMatrix& rho);

  Kind kind() const { return kind_; }
  bool is_pure() const { return kind_ == Kind::Statevector; }
  int qubits() const { return n_; }
  // Statevector amplitudes; throws for density states.
  const CVector& vector() const;
  // Density matrix (built on demand for pure states).
  CMatrix density() const;

 private:
  Kind kind_ = Kind::Statevector;
  int n_ = 0;
  CVector psi_;
  CMatrix rho_;
};

struct ShotSettings {
  std::uint64_t shots = 1000;
  std::uint64_t seed = 0;
};

struct SampledEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// --- gate kernels --------------------------------------------------------

// Applies a 2^k matrix on `targets`, conditioned on every control being |1>.
void apply_matrix(CVector& psi, int n_qubits, const std::vector<int>& targets,
                  const std::vector<int>& controls, const CMatrix& m);
// exp(-i phi P) conditioned on the controls.
void apply_pauli_rotation(CVector& psi, const PauliString& p, double phi,
                          const std::vector<int>& controls = {});
void apply_gate(CVector& psi, int n_qubits, const GateOp& gate, const RVector& theta);
// rho -> U rho U^dagger.
void apply_gate(CMatrix& rho, int n_qubits, const GateOp& gate, const RVector& theta);
// rho -> K rho K^dagger for an operator on `targets`.
CMatrix conjugate_local(const CMatrix& rho, int n_qubits, const std::vector<int>& targets,
                        const CMatrix& k);

// --- circuits ------------------------------------------------------------

CVector apply_circuit(const ParametrisedCircuit& c, const RVector& theta, const CVector& psi);
CMatrix apply_circuit(const ParametrisedCircuit& c, const RVector& theta, const CMatrix& rho);
QuantumState apply_circuit(const ParametrisedCircuit& c, const RVector& theta, const QuantumState& s);
// U(theta) applied to the circuit's reference state.
CVector prepare(const ParametrisedCircuit& c, const RVector& theta);
CMatrix circuit_unitary(const ParametrisedCircuit& c, const RVector& theta);

// d|phi>/d theta_k for every parameter, summed over gates sharing a slot.
std::vector<CVector> derivative_states(const ParametrisedCircuit& c, const RVector& theta);

// --- measurement -----------------------------------------------------------

// Tr[rho M]; the observable must be Hermitian.
double expectation(const CVector& psi, const PauliSum& observable);
double expectation(const CMatrix& rho, const PauliSum& observable);
double expectation(const QuantumState& s, const PauliSum& observable);

// Each Pauli term measured with `shots` independent single-shot outcomes.
SampledEstimate sampled_expectation(const QuantumState& s, const PauliSum& observable,
                                    const ShotSettings& settings);

// Computational-basis outcome probabilities.
RVector probabilities(const QuantumState& s);

// Re(e^{i phase} <ref|V^dagger U|ref>) from the inner product.
double hadamard_test_exact(const ParametrisedCircuit& u, const RVector& theta_u,
                           const ParametrisedCircuit& v, const RVector& theta_v,
                           double phase, const CVector& ref);
// Same quantity read off <Z> of an ancilla prepared in (|0> + e^{i phase}|1>)/sqrt 2
// driving controlled-U on |1> and controlled-V on |0>.
double hadamard_test_circuit(const ParametrisedCircuit& u, const RVector& theta_u,
                             const ParametrisedCircuit& v, const RVector& theta_v,
                             double phase, const CVector& ref);

enum class SwapMode { Ancilla, Destructive };

// Estimates Tr[rho sigma]. Without shot settings the exact circuit
// expectation is returned with zero standard error.
SampledEstimate swap_test(const QuantumState& rho, const QuantumState& sigma, SwapMode mode,
                          const std::optional<ShotSettings>& settings = std::nullopt);

}  // namespace nisq
