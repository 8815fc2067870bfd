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

#include <optional>
#include <string>
#include <vector>

#include "nisq/core/linalg.hpp"
#include "nisq/core/pauli.hpp"

namespace nisq {

enum class GateKind { Fixed, Rotation };

// One term of dU/dtheta = sum_i g_i U sigma_i.
struct Generator {
  Complex g;
  PauliString sigma;
};

// A gate in a circuit.
//
// Fixed gates carry a 2^k x 2^k matrix on `targets` (targets[0] is the most
// significant local bit). Rotations are exp(-i phi P) with a register-wide
// Hermitian Pauli P and phi = scale * theta[slot] + offset; slot -1 means a
// constant angle. The usual Rx(theta) = exp(-i theta X / 2) has scale 1/2.
struct GateOp {
  GateKind kind = GateKind::Fixed;
  std::string name;
  std::vector<int> targets;
  std::vector<int> controls;
  CMatrix matrix;
  PauliString pauli;
  int slot = -1;
  double scale = 0.5;
  double offset = 0.0;

  bool parametrised() const { return kind == GateKind::Rotation && slot >= 0; }
  double angle(const RVector& theta) const;
  // Derivative generators with respect to theta[slot]. Controlled rotations
  // have no Pauli generator and throw.
  std::vector<Generator> generators() const;
  // Dense 2^n matrix of the gate on an n-qubit register.
  CMatrix dense(int n_qubits, const RVector& theta) const;
  GateOp inverse() const;
  // Number of qubits the gate touches, controls included.
  int arity() const;
  std::vector<int> support() const;
};

class ParametrisedCircuit {
 public:
  ParametrisedCircuit() = default;
  explicit ParametrisedCircuit(int n_qubits, int n_params = 0);

  int qubits() const { return n_; }
  int num_params() const { return n_params_; }
  const std::vector<GateOp>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  // Grows the parameter vector; returns the first new slot.
  int add_parameters(int count = 1);

  ParametrisedCircuit& h(int q);
  ParametrisedCircuit& x(int q);
  ParametrisedCircuit& y(int q);
  ParametrisedCircuit& z(int q);
  ParametrisedCircuit& s(int q);
  ParametrisedCircuit& sdg(int q);
  ParametrisedCircuit& t(int q);
  ParametrisedCircuit& cnot(int control, int target);
  ParametrisedCircuit& cz(int a, int b);
  ParametrisedCircuit& swap(int a, int b);
  ParametrisedCircuit& unitary(const std::string& name, const CMatrix& m,
                               const std::vector<int>& targets,
                               const std::vector<int>& controls = {});
  ParametrisedCircuit& rx(int q, int slot, double scale = 0.5, double offset = 0.0);
  ParametrisedCircuit& ry(int q, int slot, double scale = 0.5, double offset = 0.0);
  ParametrisedCircuit& rz(int q, int slot, double scale = 0.5, double offset = 0.0);
  // exp(-i (scale * theta[slot] + offset) P).
  ParametrisedCircuit& rotation(const PauliString& p, int slot, double scale = 0.5,
                                double offset = 0.0, const std::vector<int>& controls = {});
  // exp(-i angle P), no parameter.
  ParametrisedCircuit& fixed_rotation(const PauliString& p, double angle,
                                      const std::vector<int>& controls = {});
  ParametrisedCircuit& add(GateOp op);

  // Appends `other`, shifting its parameter slots by `slot_offset`.
  ParametrisedCircuit& append(const ParametrisedCircuit& other, int slot_offset = 0);

  // U(theta)^dagger over the same parameter vector.
  ParametrisedCircuit inverse() const;
  // The circuit placed on a larger register; qubit q goes to map[q].
  ParametrisedCircuit embedded(int n_total, const std::vector<int>& map) const;
  // Every gate gains `control` as an extra control qubit.
  ParametrisedCircuit controlled_by(int control) const;

  // Initial state; |0...0> unless set.
  void set_reference(const CVector& psi);
  bool has_reference() const { return reference_.has_value(); }
  CVector reference() const;

  // Throws on length mismatch or non-finite entries.
  void check_params(const RVector& theta) const;

 private:
  int n_ = 0;
  int n_params_ = 0;
  std::vector<GateOp> gates_;
  std::optional<CVector> reference_;
  void check_qubit(int q) const;
};

// Alternating Ry/Rz layers with a CNOT ladder between them: depth + 1
// rotation layers, 2 n (depth + 1) parameters.
ParametrisedCircuit hardware_efficient_ansatz(int n_qubits, int depth);

namespace gates {
CMatrix h();
CMatrix x();
CMatrix y();
CMatrix z();
CMatrix s();
CMatrix t();
CMatrix cnot();
CMatrix cz();
CMatrix swap();
}  // namespace gates

}  // namespace nisq
