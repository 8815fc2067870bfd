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

#include "nisq/vqs/mclachlan.hpp"

#include <cmath>
#include <stdexcept>

#include "nisq/core/simulator.hpp"

namespace nisq {

namespace {

void check(const ParametrisedCircuit& c, const RVector& theta, const PauliSum& h) {
  if (h.qubits() != c.qubits()) throw std::invalid_argument("mclachlan: Hamiltonian and circuit registers differ");
  h.require_hermitian("mclachlan");
  c.check_params(theta);
  for (const auto& g : c.gates())
    if (g.parametrised() && !g.controls.empty())
      throw std::invalid_argument("mclachlan: gate '" + g.name + "' has no Pauli derivative generator");
}

// A derivative branch: g * (circuit with sigma inserted after one gate).
struct Branch {
  Complex g;
  ParametrisedCircuit circuit;
};

// exp(-i pi/2 P) = -i P, so inserting that rotation and scaling by i gives P.
ParametrisedCircuit with_pauli_after(const ParametrisedCircuit& c, std::size_t index, const PauliString& p,
                                     Complex& factor) {
  ParametrisedCircuit out(c.qubits(), c.num_params());
  if (c.has_reference()) out.set_reference(c.reference());
  const auto& gates = c.gates();
  PauliString letters = p.without_phase();
  factor *= p.phase() * kI;
  const bool insert = !letters.is_identity_letters();
  for (std::size_t j = 0; j < gates.size(); ++j) {
    out.add(gates[j]);
    if (j == index && insert) out.fixed_rotation(letters, M_PI / 2);
  }
  // index == size() appends after the last gate (or onto the bare reference).
  if (index >= gates.size() && insert) out.fixed_rotation(letters, M_PI / 2);
  if (letters.is_identity_letters()) factor *= -kI;  // no rotation was inserted
  return out;
}

std::vector<std::vector<Branch>> branches(const ParametrisedCircuit& c) {
  std::vector<std::vector<Branch>> out(static_cast<std::size_t>(c.num_params()));
  const auto& gates = c.gates();
  for (std::size_t j = 0; j < gates.size(); ++j) {
    if (!gates[j].parametrised()) continue;
    for (const auto& gen : gates[j].generators()) {
      Complex f = gen.g;
      ParametrisedCircuit b = with_pauli_after(c, j, gen.sigma, f);
      out[static_cast<std::size_t>(gates[j].slot)].push_back({f, b});
    }
  }
  return out;
}

// z = a <ref|V^dagger U|ref>, evaluated as Re(e^{i phase} <..>) twice.
Complex ancilla_overlap(const ParametrisedCircuit& v, const ParametrisedCircuit& u, const RVector& theta,
                        const CVector& ref) {
  const double re = hadamard_test_circuit(u, theta, v, theta, 0.0, ref);
  const double im = -hadamard_test_circuit(u, theta, v, theta, M_PI / 2, ref);
  return {re, im};
}

}  // namespace

McLachlanSystem assemble_mclachlan(const ParametrisedCircuit& c, const RVector& theta, const PauliSum& h,
                                   EvolutionMode mode) {
  check(c, theta, h);
  const CVector psi = prepare(c, theta);
  const CVector hpsi = h.apply(psi);
  const std::vector<CVector> d = derivative_states(c, theta);
  const auto p = static_cast<Eigen::Index>(d.size());
  McLachlanSystem s;
  s.mode = mode;
  s.m.resize(p, p);
  s.rhs.resize(p);
  for (Eigen::Index k = 0; k < p; ++k) {
    for (Eigen::Index j = k; j < p; ++j) s.m(k, j) = s.m(j, k) = d[k].dot(d[j]).real();
    const Complex z = d[k].dot(hpsi);
    s.rhs(k) = mode == EvolutionMode::Real ? z.imag() : -z.real();
  }
  s.energy = psi.dot(hpsi).real();
  s.h2 = hpsi.squaredNorm();
  return s;
}

McLachlanSystem assemble_mclachlan_circuits(const ParametrisedCircuit& c, const RVector& theta, const PauliSum& h,
                                            EvolutionMode mode) {
  check(c, theta, h);
  const CVector ref = c.reference();
  const auto br = branches(c);
  const auto p = static_cast<Eigen::Index>(br.size());
  McLachlanSystem s;
  s.mode = mode;
  s.m = RMatrix::Zero(p, p);
  s.rhs = RVector::Zero(p);
  for (Eigen::Index k = 0; k < p; ++k)
    for (Eigen::Index j = k; j < p; ++j) {
      Complex z = 0.0;
      for (const auto& a : br[static_cast<std::size_t>(k)])
        for (const auto& b : br[static_cast<std::size_t>(j)])
          z += std::conj(a.g) * b.g * ancilla_overlap(a.circuit, b.circuit, theta, ref);
      s.m(k, j) = s.m(j, k) = z.real();
    }
  // H U|ref> term by term: each Pauli appended after the last gate.
  std::vector<std::pair<Complex, ParametrisedCircuit>> hterms;
  for (const auto& [coeff, pauli] : h.real_terms()) {
    Complex f = coeff;
    ParametrisedCircuit hc = with_pauli_after(c, c.size(), pauli, f);
    hterms.emplace_back(f, std::move(hc));
  }
  for (Eigen::Index k = 0; k < p; ++k) {
    Complex z = 0.0;
    for (const auto& a : br[static_cast<std::size_t>(k)])
      for (const auto& [f, hc] : hterms) z += std::conj(a.g) * f * ancilla_overlap(a.circuit, hc, theta, ref);
    s.rhs(k) = mode == EvolutionMode::Real ? z.imag() : -z.real();
  }
  Complex e = 0.0;
  for (const auto& [f, hc] : hterms) e += f * ancilla_overlap(c, hc, theta, ref);
  s.energy = e.real();
  // <H^2> = sum_ab f_a f_b <P_a P_b>, as overlaps of the H-term circuits.
  Complex h2 = 0.0;
  for (const auto& [fa, ca] : hterms)
    for (const auto& [fb, cb] : hterms) h2 += std::conj(fa) * fb * ancilla_overlap(ca, cb, theta, ref);
  s.h2 = h2.real();
  return s;
}

double mclachlan_residual(const McLachlanSystem& s, const RVector& td) {
  if (td.size() != s.rhs.size()) throw std::invalid_argument("mclachlan_residual: size mismatch");
  const double quad = td.dot(s.m * td) - 2.0 * s.rhs.dot(td);
  if (s.mode == EvolutionMode::Real) return quad + s.h2;
  return quad + s.h2 - s.energy * s.energy;
}

}  // namespace nisq
