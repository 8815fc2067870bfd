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
#include <utility>
#include <vector>

#include "nisq/core/linalg.hpp"

namespace nisq {

// Tensor product of single-qubit Paulis times a phase i^k.
//
// Qubit 0 is the leftmost letter and the most significant bit of a basis
// index. Letters are stored as x/z bit masks; Y sets both.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits);
  // "XZI", optionally prefixed by one of "+", "-", "i", "-i".
  static PauliString parse(const std::string& text);
  static PauliString identity(int n_qubits) { return PauliString(n_qubits); }
  // Single letter on one qubit of an n-qubit register.
  static PauliString single(int n_qubits, int qubit, char letter);

  int qubits() const { return n_; }
  char letter(int qubit) const;
  void set_letter(int qubit, char letter);
  // i^phase_power; always in 0..3.
  int phase_power() const { return phase_; }
  Complex phase() const;
  void set_phase_power(int k) { phase_ = ((k % 4) + 4) % 4; }

  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  int y_count() const;
  int weight() const;
  bool is_identity_letters() const { return x_ == 0 && z_ == 0; }
  // Hermitian iff the phase is real.
  bool is_hermitian() const { return phase_ % 2 == 0; }

  std::string letters() const;
  std::string to_string() const;

  PauliString operator*(const PauliString& rhs) const;
  PauliString operator-() const;
  bool commutes_with(const PauliString& rhs) const;
  // Same letters, ignoring phase.
  bool same_letters(const PauliString& rhs) const { return x_ == rhs.x_ && z_ == rhs.z_; }
  bool operator==(const PauliString& rhs) const {
    return n_ == rhs.n_ && x_ == rhs.x_ && z_ == rhs.z_ && phase_ == rhs.phase_;
  }
  // Letters only; phase dropped.
  PauliString without_phase() const;

  // Amplitude and target of P|b>.
  std::pair<Complex, std::uint64_t> act(std::uint64_t basis) const;

  CVector apply(const CVector& psi) const;
  CMatrix matrix() const;
  // <psi|P|psi>
  Complex expectation(const CVector& psi) const;
  // Tr[P rho]
  Complex expectation(const CMatrix& rho) const;

  // Lexicographic order on (x, z, phase); used for canonical sorting.
  bool operator<(const PauliString& rhs) const;

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
  std::uint64_t bit(int qubit) const { return std::uint64_t{1} << (n_ - 1 - qubit); }
};

struct PauliTerm {
  Complex coeff;
  PauliString pauli;
};

// Weighted sum of Pauli strings on a common register.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}
  PauliSum(Complex coeff, const PauliString& p);

  static PauliSum identity(int n_qubits, Complex coeff = 1.0);
  // Lines of "<re> <im> <letters>"; blank lines and '#' comments ignored.
  static PauliSum parse(const std::string& text);
  // Exact decomposition of a 2^n x 2^n matrix.
  static PauliSum from_matrix(const CMatrix& m, double drop_tol = 0.0);

  int qubits() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  PauliSum& add(Complex coeff, const PauliString& p);
  PauliSum& operator+=(const PauliSum& rhs);
  PauliSum& operator-=(const PauliSum& rhs);
  PauliSum& operator*=(Complex s);
  PauliSum operator+(const PauliSum& rhs) const;
  PauliSum operator-(const PauliSum& rhs) const;
  PauliSum operator*(const PauliSum& rhs) const;
  PauliSum operator*(Complex s) const;
  friend PauliSum operator*(Complex s, const PauliSum& p) { return p * s; }

  // Phases absorbed into coefficients, equal letters merged, near-zero
  // coefficients dropped, terms sorted.
  PauliSum simplified(double tol = 1e-14) const;
  bool is_hermitian(double tol = 1e-12) const;
  void require_hermitian(const char* where) const;
  PauliSum adjoint() const;

  // Real weights of the simplified Hermitian form, with phase-free strings.
  std::vector<std::pair<double, PauliString>> real_terms() const;
  double one_norm() const;

  CVector apply(const CVector& psi) const;
  CMatrix matrix() const;
  Complex expectation(const CVector& psi) const;
  Complex expectation(const CMatrix& rho) const;

  // Inverse of parse; coefficients printed with %.17g so text round-trips.
  std::string to_text() const;

 private:
  int n_ = 0;
  std::vector<PauliTerm> terms_;
  void check_register(int n) const;
};

// All 4^n phase-free Pauli strings in I,X,Y,Z lexicographic order.
std::vector<PauliString> pauli_basis(int n_qubits);

}  // namespace nisq
