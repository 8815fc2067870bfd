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

#include "nisq/noise/channel.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "nisq/core/simulator.hpp"

namespace nisq {

namespace {

void check_probability(double p, double hi, const char* what) {
  if (!(p >= 0.0 && p <= hi + 1e-15))
    throw std::invalid_argument(std::string(what) + ": parameter out of range");
}

}  // namespace

QuantumChannel QuantumChannel::from_kraus(std::string label, std::vector<CMatrix> kraus,
                                          bool require_tp) {
  if (kraus.empty()) throw std::invalid_argument("channel '" + label + "': no Kraus operators");
  const Eigen::Index d = kraus.front().rows();
  const int arity = qubits_of(d);
  if (arity < 0) throw std::invalid_argument("channel '" + label + "': dimension is not 2^k");
  for (const auto& k : kraus)
    if (k.rows() != d || k.cols() != d) throw std::invalid_argument("channel '" + label + "': Kraus shape mismatch");
  QuantumChannel c;
  c.label = std::move(label);
  c.arity = arity;
  c.kraus = std::move(kraus);
  const double err = c.tp_error();
  c.trace_preserving = err <= 1e-10;
  if (require_tp && !c.trace_preserving)
    throw std::invalid_argument("channel '" + c.label + "': Kraus operators are not trace preserving");
  return c;
}

QuantumChannel QuantumChannel::from_superoperator(std::string label, const CMatrix& s, bool require_tp) {
  const Eigen::Index d2 = s.rows();
  const Eigen::Index d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(d2))));
  if (d * d != d2 || s.cols() != d2) throw std::invalid_argument("from_superoperator: bad shape");
  // Choi matrix with block (i, j) = E(|i><j|).
  CMatrix choi(d2, d2);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto col = s.col(i + j * d);
      for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) choi(i * d + r, j * d + c) = col(r + c * d);
    }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (choi + choi.adjoint()));
  const double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<CMatrix> kraus;
  for (Eigen::Index k = 0; k < d2; ++k) {
    const double lam = es.eigenvalues()(k);
    if (lam < -1e-9 * top) throw std::invalid_argument("from_superoperator: map is not completely positive");
    if (lam <= 1e-14 * top) continue;
    CMatrix kr(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index r = 0; r < d; ++r) kr(r, i) = std::sqrt(lam) * es.eigenvectors()(i * d + r, k);
    kraus.push_back(kr);
  }
  if (kraus.empty()) kraus.push_back(CMatrix::Zero(d, d));
  return from_kraus(std::move(label), std::move(kraus), require_tp);
}

CMatrix QuantumChannel::apply(const CMatrix& rho) const {
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

CMatrix QuantumChannel::apply(const CMatrix& rho, int n, const std::vector<int>& targets) const {
  if (int(targets.size()) != arity)
    throw std::invalid_argument("channel '" + label + "': arity does not match targets");
  if (arity == n) {
    bool ordered = true;
    for (int q = 0; q < n; ++q) ordered = ordered && targets[q] == q;
    if (ordered) return apply(rho);
  }
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : kraus) out += conjugate_local(rho, n, targets, k);
  return out;
}

double QuantumChannel::tp_error() const {
  CMatrix s = CMatrix::Zero(kraus.front().rows(), kraus.front().cols());
  for (const auto& k : kraus) s += k.adjoint() * k;
  return (s - CMatrix::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff();
}

RMatrix QuantumChannel::ptm() const {
  const auto basis = pauli_basis(arity);
  std::vector<CMatrix> mats;
  mats.reserve(basis.size());
  for (const auto& p : basis) mats.push_back(p.matrix());
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  const double d = double(dim());
  RMatrix r(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    CMatrix out = apply(mats[j]);
    for (Eigen::Index i = 0; i < n; ++i) r(i, j) = (mats[i] * out).trace().real() / d;
  }
  return r;
}

CMatrix superop_left_right(const CMatrix& a, const CMatrix& b) {
  return kron(CMatrix(b.transpose()), a);
}

CMatrix QuantumChannel::superoperator() const {
  const Eigen::Index d = kraus.front().rows();
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (const auto& k : kraus) s += superop_left_right(k, k.adjoint());
  return s;
}

QuantumChannel QuantumChannel::then(const QuantumChannel& next) const {
  if (next.arity != arity) throw std::invalid_argument("channel composition: arity mismatch");
  std::vector<CMatrix> ks;
  for (const auto& b : next.kraus)
    for (const auto& a : kraus) ks.push_back(b * a);
  QuantumChannel c = from_kraus(next.label + "*" + label, std::move(ks), false);
  return c;
}

QuantumChannel QuantumChannel::tensor(const QuantumChannel& other) const {
  std::vector<CMatrix> ks;
  for (const auto& a : kraus)
    for (const auto& b : other.kraus) ks.push_back(kron(a, b));
  return from_kraus(label + "(x)" + other.label, std::move(ks), false);
}

bool QuantumChannel::is_identity(double tol) const {
  CMatrix s = superoperator();
  return (s - CMatrix::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff() <= tol;
}

QuantumChannel identity_channel(int arity) {
  return QuantumChannel::from_kraus("identity", {CMatrix::Identity(static_cast<Eigen::Index>(dim_of(arity)),
                                                                   static_cast<Eigen::Index>(dim_of(arity)))});
}

QuantumChannel unitary_channel(const CMatrix& u, std::string label) {
  if (!is_unitary(u, 1e-10)) throw std::invalid_argument("unitary_channel: matrix is not unitary");
  return QuantumChannel::from_kraus(std::move(label), {u});
}

QuantumChannel depolarizing_channel(double p) {
  check_probability(p, 4.0 / 3.0, "depolarizing_channel");
  std::vector<CMatrix> ks;
  ks.push_back(std::sqrt(std::max(0.0, 1.0 - 0.75 * p)) * CMatrix::Identity(2, 2));
  for (const char* l : {"X", "Y", "Z"}) ks.push_back(std::sqrt(p / 4.0) * PauliString::parse(l).matrix());
  return QuantumChannel::from_kraus("depolarizing", std::move(ks));
}

QuantumChannel depolarizing_channel(double p, int arity) {
  if (arity == 1) return depolarizing_channel(p);
  if (arity < 1) throw std::invalid_argument("depolarizing_channel: arity must be positive");
  const double d2 = double(dim_of(2 * arity));
  check_probability(p, d2 / (d2 - 1.0), "depolarizing_channel");
  std::vector<CMatrix> ks;
  for (const auto& q : pauli_basis(arity)) {
    const double w = q.is_identity_letters() ? 1.0 - p + p / d2 : p / d2;
    ks.push_back(std::sqrt(std::max(0.0, w)) * q.matrix());
  }
  return QuantumChannel::from_kraus("depolarizing" + std::to_string(arity), std::move(ks));
}

QuantumChannel amplitude_damping_channel(double gamma) {
  check_probability(gamma, 1.0, "amplitude_damping_channel");
  CMatrix k0 = CMatrix::Zero(2, 2), k1 = CMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return QuantumChannel::from_kraus("amplitude_damping", {k0, k1});
}

QuantumChannel dephasing_channel(double p) {
  check_probability(p, 1.0, "dephasing_channel");
  return pauli_channel({{"I", 1.0 - p}, {"Z", p}});
}

QuantumChannel bit_flip_channel(double p) {
  check_probability(p, 1.0, "bit_flip_channel");
  return pauli_channel({{"I", 1.0 - p}, {"X", p}});
}

QuantumChannel pauli_channel(const std::map<std::string, double>& probs) {
  if (probs.empty()) throw std::invalid_argument("pauli_channel: no terms");
  std::vector<CMatrix> ks;
  double total = 0.0;
  for (const auto& [letters, p] : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("pauli_channel: negative probability");
    total += p;
    PauliString q = PauliString::parse(letters);
    if (q.phase_power() != 0) throw std::invalid_argument("pauli_channel: keys must be phase-free");
    if (p > 0.0) ks.push_back(std::sqrt(p) * q.matrix());
  }
  if (std::abs(total - 1.0) > 1e-10) throw std::invalid_argument("pauli_channel: probabilities must sum to 1");
  return QuantumChannel::from_kraus("pauli", std::move(ks));
}

std::map<std::string, double> pauli_error_probabilities(const QuantumChannel& channel) {
  const double d2 = double(channel.dim() * channel.dim());
  std::map<std::string, double> out;
  for (const auto& q : pauli_basis(channel.arity)) {
    const CMatrix qm = q.matrix();
    double p = 0.0;
    for (const auto& k : channel.kraus) p += std::norm((qm * k).trace());
    out[q.letters()] = p / d2;
  }
  return out;
}

QuantumChannel pauli_twirl(const QuantumChannel& channel) {
  if (channel.arity < 1 || channel.arity > 2) throw std::invalid_argument("pauli_twirl: only 1- and 2-qubit channels");
  std::vector<CMatrix> ks;
  for (const auto& [letters, p] : pauli_error_probabilities(channel))
    if (p > 0.0) ks.push_back(std::sqrt(p) * PauliString::parse(letters).matrix());
  if (ks.empty()) ks.push_back(CMatrix::Zero(static_cast<Eigen::Index>(channel.dim()), static_cast<Eigen::Index>(channel.dim())));
  return QuantumChannel::from_kraus("twirl(" + channel.label + ")", std::move(ks), channel.trace_preserving);
}

double effective_depolarizing_rate(const QuantumChannel& channel) {
  const double d2 = double(channel.dim() * channel.dim());
  return 1.0 - (channel.ptm().trace() - 1.0) / (d2 - 1.0);
}

}  // namespace nisq
