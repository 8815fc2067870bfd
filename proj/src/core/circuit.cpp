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

#include "nisq/core/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nisq/core/simulator.hpp"

namespace nisq {

namespace gates {
CMatrix h() {
  CMatrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}
CMatrix x() { return PauliString::parse("X").matrix(); }
CMatrix y() { return PauliString::parse("Y").matrix(); }
CMatrix z() { return PauliString::parse("Z").matrix(); }
CMatrix s() {
  CMatrix m = CMatrix::Identity(2, 2);
  m(1, 1) = kI;
  return m;
}
CMatrix t() {
  CMatrix m = CMatrix::Identity(2, 2);
  m(1, 1) = std::polar(1.0, M_PI / 4);
  return m;
}
CMatrix cnot() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}
CMatrix cz() {
  CMatrix m = CMatrix::Identity(4, 4);
  m(3, 3) = -1;
  return m;
}
CMatrix swap() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
  return m;
}
}  // namespace gates

double GateOp::angle(const RVector& theta) const {
  if (slot < 0) return offset;
  if (slot >= theta.size()) throw std::out_of_range("GateOp: parameter slot out of range");
  return scale * theta(slot) + offset;
}

std::vector<Generator> GateOp::generators() const {
  if (!parametrised()) return {};
  if (!controls.empty())
    throw std::invalid_argument("GateOp '" + name + "': controlled rotation has no Pauli generator");
  return {{Complex(0.0, -scale), pauli}};
}

CMatrix GateOp::dense(int n_qubits, const RVector& theta) const {
  check_statevector_capacity(n_qubits);
  const std::size_t d = dim_of(n_qubits);
  CMatrix out(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t b = 0; b < d; ++b) {
    CVector e = CVector::Zero(static_cast<Eigen::Index>(d));
    e(static_cast<Eigen::Index>(b)) = 1.0;
    apply_gate(e, n_qubits, *this, theta);
    out.col(static_cast<Eigen::Index>(b)) = e;
  }
  return out;
}

GateOp GateOp::inverse() const {
  GateOp g = *this;
  if (kind == GateKind::Fixed) {
    g.matrix = matrix.adjoint();
  } else {
    g.scale = -scale;
    g.offset = -offset;
  }
  if (!g.name.empty() && g.name.back() == '\'')
    g.name.pop_back();
  else
    g.name += '\'';
  return g;
}

std::vector<int> GateOp::support() const {
  std::set<int> qs(controls.begin(), controls.end());
  if (kind == GateKind::Fixed) {
    qs.insert(targets.begin(), targets.end());
  } else {
    for (int q = 0; q < pauli.qubits(); ++q)
      if (pauli.letter(q) != 'I') qs.insert(q);
  }
  return {qs.begin(), qs.end()};
}

int GateOp::arity() const { return static_cast<int>(support().size()); }

// ---------------------------------------------------------------------------

ParametrisedCircuit::ParametrisedCircuit(int n_qubits, int n_params)
    : n_(n_qubits), n_params_(n_params) {
  if (n_qubits < 1) throw std::invalid_argument("ParametrisedCircuit: need at least one qubit");
  if (n_params < 0) throw std::invalid_argument("ParametrisedCircuit: negative parameter count");
  check_statevector_capacity(n_qubits);
}

int ParametrisedCircuit::add_parameters(int count) {
  const int first = n_params_;
  n_params_ += count;
  return first;
}

void ParametrisedCircuit::check_qubit(int q) const {
  if (q < 0 || q >= n_) throw std::out_of_range("ParametrisedCircuit: qubit " + std::to_string(q) + " out of range");
}

ParametrisedCircuit& ParametrisedCircuit::add(GateOp op) {
  for (int q : op.controls) check_qubit(q);
  if (op.kind == GateKind::Fixed) {
    for (int q : op.targets) check_qubit(q);
    const Eigen::Index d = static_cast<Eigen::Index>(dim_of(int(op.targets.size())));
    if (op.matrix.rows() != d || op.matrix.cols() != d)
      throw std::invalid_argument("gate '" + op.name + "': matrix size does not match targets");
    if (!is_unitary(op.matrix, 1e-10)) throw std::invalid_argument("gate '" + op.name + "': matrix is not unitary");
  } else {
    if (op.pauli.qubits() != n_) throw std::invalid_argument("rotation: Pauli register mismatch");
    if (!op.pauli.is_hermitian()) throw std::invalid_argument("rotation: Pauli must be Hermitian");
    for (int c : op.controls)
      if (op.pauli.letter(c) != 'I') throw std::invalid_argument("rotation: control overlaps the Pauli support");
    if (op.slot >= n_params_) n_params_ = op.slot + 1;
  }
  std::vector<int> all = op.kind == GateKind::Fixed ? op.targets : std::vector<int>{};
  all.insert(all.end(), op.controls.begin(), op.controls.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw std::invalid_argument("gate '" + op.name + "': repeated qubit");
  gates_.push_back(std::move(op));
  return *this;
}

ParametrisedCircuit& ParametrisedCircuit::unitary(const std::string& name, const CMatrix& m,
                                                  const std::vector<int>& targets,
                                                  const std::vector<int>& controls) {
  GateOp op;
  op.kind = GateKind::Fixed;
  op.name = name;
  op.targets = targets;
  op.controls = controls;
  op.matrix = m;
  return add(std::move(op));
}

ParametrisedCircuit& ParametrisedCircuit::h(int q) { return unitary("H", gates::h(), {q}); }
ParametrisedCircuit& ParametrisedCircuit::x(int q) { return unitary("X", gates::x(), {q}); }
ParametrisedCircuit& ParametrisedCircuit::y(int q) { return unitary("Y", gates::y(), {q}); }
ParametrisedCircuit& ParametrisedCircuit::z(int q) { return unitary("Z", gates::z(), {q}); }
ParametrisedCircuit& ParametrisedCircuit::s(int q) { return unitary("S", gates::s(), {q}); }
ParametrisedCircuit& ParametrisedCircuit::sdg(int q) { return unitary("S'", gates::s().adjoint(), {q}); }
ParametrisedCircuit& ParametrisedCircuit::t(int q) { return unitary("T", gates::t(), {q}); }
ParametrisedCircuit& ParametrisedCircuit::cnot(int c, int t) { return unitary("CNOT", gates::cnot(), {c, t}); }
ParametrisedCircuit& ParametrisedCircuit::cz(int a, int b) { return unitary("CZ", gates::cz(), {a, b}); }
ParametrisedCircuit& ParametrisedCircuit::swap(int a, int b) { return unitary("SWAP", gates::swap(), {a, b}); }

ParametrisedCircuit& ParametrisedCircuit::rotation(const PauliString& p, int slot, double scale,
                                                   double offset, const std::vector<int>& controls) {
  if (slot < -1) throw std::invalid_argument("rotation: invalid parameter slot");
  GateOp op;
  op.kind = GateKind::Rotation;
  op.name = "R" + p.letters();
  op.pauli = p;
  op.slot = slot;
  op.scale = slot < 0 ? 0.0 : scale;
  op.offset = offset;
  op.controls = controls;
  return add(std::move(op));
}

ParametrisedCircuit& ParametrisedCircuit::fixed_rotation(const PauliString& p, double angle,
                                                         const std::vector<int>& controls) {
  return rotation(p, -1, 0.0, angle, controls);
}

ParametrisedCircuit& ParametrisedCircuit::rx(int q, int slot, double scale, double offset) {
  check_qubit(q);
  return rotation(PauliString::single(n_, q, 'X'), slot, scale, offset);
}
ParametrisedCircuit& ParametrisedCircuit::ry(int q, int slot, double scale, double offset) {
  check_qubit(q);
  return rotation(PauliString::single(n_, q, 'Y'), slot, scale, offset);
}
ParametrisedCircuit& ParametrisedCircuit::rz(int q, int slot, double scale, double offset) {
  check_qubit(q);
  return rotation(PauliString::single(n_, q, 'Z'), slot, scale, offset);
}

ParametrisedCircuit& ParametrisedCircuit::append(const ParametrisedCircuit& other, int slot_offset) {
  if (other.n_ != n_) throw std::invalid_argument("append: register mismatch");
  for (GateOp g : other.gates_) {
    if (g.slot >= 0) g.slot += slot_offset;
    add(std::move(g));
  }
  n_params_ = std::max(n_params_, other.n_params_ + slot_offset);
  return *this;
}

ParametrisedCircuit ParametrisedCircuit::inverse() const {
  ParametrisedCircuit out(n_, n_params_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->inverse());
  return out;
}

ParametrisedCircuit ParametrisedCircuit::embedded(int n_total, const std::vector<int>& map) const {
  if (int(map.size()) != n_) throw std::invalid_argument("embedded: map size must equal qubit count");
  ParametrisedCircuit out(n_total, n_params_);
  for (const GateOp& g : gates_) {
    GateOp e = g;
    for (int& q : e.targets) q = map.at(q);
    for (int& q : e.controls) q = map.at(q);
    if (g.kind == GateKind::Rotation) {
      PauliString p(n_total);
      for (int q = 0; q < n_; ++q) p.set_letter(map[q], g.pauli.letter(q));
      p.set_phase_power(g.pauli.phase_power());
      e.pauli = p;
    }
    out.add(std::move(e));
  }
  return out;
}

ParametrisedCircuit ParametrisedCircuit::controlled_by(int control) const {
  check_qubit(control);
  ParametrisedCircuit out(n_, n_params_);
  for (GateOp g : gates_) {
    g.controls.push_back(control);
    out.add(std::move(g));
  }
  return out;
}

void ParametrisedCircuit::set_reference(const CVector& psi) {
  if (psi.size() != static_cast<Eigen::Index>(dim_of(n_))) throw std::invalid_argument("set_reference: dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw std::invalid_argument("set_reference: state not normalised");
  reference_ = psi;
}

CVector ParametrisedCircuit::reference() const {
  if (reference_) return *reference_;
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(dim_of(n_)));
  psi(0) = 1.0;
  return psi;
}

void ParametrisedCircuit::check_params(const RVector& theta) const {
  if (theta.size() != n_params_)
    throw std::invalid_argument("parameter vector has length " + std::to_string(theta.size()) +
                                ", circuit expects " + std::to_string(n_params_));
  if (!all_finite(theta)) throw std::invalid_argument("non-finite parameter");
}

ParametrisedCircuit hardware_efficient_ansatz(int n_qubits, int depth) {
  if (depth < 0) throw std::invalid_argument("hardware_efficient_ansatz: negative depth");
  ParametrisedCircuit c(n_qubits);
  int slot = 0;
  for (int layer = 0; layer <= depth; ++layer) {
    if (layer > 0)
      for (int q = 0; q + 1 < n_qubits; ++q) c.cnot(q, q + 1);
    for (int q = 0; q < n_qubits; ++q) c.ry(q, slot++);
    for (int q = 0; q < n_qubits; ++q) c.rz(q, slot++);
  }
  return c;
}

}  // namespace nisq
