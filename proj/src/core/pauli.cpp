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

#include "nisq/core/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace nisq {

namespace {

int letter_index(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
    default: throw std::invalid_argument(std::string("invalid Pauli letter '") + c + "'");
  }
}

// Exponent k with a*b = i^k c for single-qubit letters.
int product_phase(int a, int b) {
  if (a == 0 || b == 0 || a == b) return 0;
  // X->Y->Z->X is the positive cycle.
  return ((b - a + 3) % 3 == 1) ? 1 : 3;
}

const Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

PauliString::PauliString(int n_qubits) : n_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 63) throw std::invalid_argument("PauliString: qubit count out of range");
}

PauliString PauliString::parse(const std::string& text) {
  std::string s = text;
  int phase = 0;
  if (s.rfind("-i", 0) == 0) {
    phase = 3;
    s = s.substr(2);
  } else if (s.rfind("+i", 0) == 0) {
    phase = 1;
    s = s.substr(2);
  } else if (!s.empty() && s[0] == 'i') {
    phase = 1;
    s = s.substr(1);
  } else if (!s.empty() && s[0] == '-') {
    phase = 2;
    s = s.substr(1);
  } else if (!s.empty() && s[0] == '+') {
    s = s.substr(1);
  }
  if (s.empty()) throw std::invalid_argument("PauliString: empty letter string");
  PauliString p(static_cast<int>(s.size()));
  for (int q = 0; q < p.n_; ++q) p.set_letter(q, s[q]);
  p.phase_ = phase;
  return p;
}

PauliString PauliString::single(int n_qubits, int qubit, char letter) {
  PauliString p(n_qubits);
  p.set_letter(qubit, letter);
  return p;
}

char PauliString::letter(int qubit) const {
  if (qubit < 0 || qubit >= n_) throw std::out_of_range("PauliString: qubit index");
  const bool x = (x_ & bit(qubit)) != 0;
  const bool z = (z_ & bit(qubit)) != 0;
  return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

void PauliString::set_letter(int qubit, char c) {
  if (qubit < 0 || qubit >= n_) throw std::out_of_range("PauliString: qubit index");
  const int idx = letter_index(c);
  const std::uint64_t b = bit(qubit);
  x_ &= ~b;
  z_ &= ~b;
  if (idx == 1 || idx == 2) x_ |= b;
  if (idx == 2 || idx == 3) z_ |= b;
}

Complex PauliString::phase() const { return kPhases[phase_]; }

int PauliString::y_count() const { return std::popcount(x_ & z_); }

int PauliString::weight() const { return std::popcount(x_ | z_); }

std::string PauliString::letters() const {
  std::string s(n_, 'I');
  for (int q = 0; q < n_; ++q) s[q] = letter(q);
  return s;
}

std::string PauliString::to_string() const {
  static const char* prefix[4] = {"", "i", "-", "-i"};
  return prefix[phase_] + letters();
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("PauliString product: register mismatch");
  PauliString out(n_);
  int k = phase_ + rhs.phase_;
  for (int q = 0; q < n_; ++q) {
    const int a = letter_index(letter(q));
    const int b = letter_index(rhs.letter(q));
    k += product_phase(a, b);
  }
  out.x_ = x_ ^ rhs.x_;
  out.z_ = z_ ^ rhs.z_;
  out.phase_ = k % 4;
  return out;
}

PauliString PauliString::operator-() const {
  PauliString out = *this;
  out.phase_ = (phase_ + 2) % 4;
  return out;
}

PauliString PauliString::without_phase() const {
  PauliString out = *this;
  out.phase_ = 0;
  return out;
}

bool PauliString::commutes_with(const PauliString& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("PauliString: register mismatch");
  return std::popcount((x_ & rhs.z_) ^ (z_ & rhs.x_)) % 2 == 0;
}

std::pair<Complex, std::uint64_t> PauliString::act(std::uint64_t b) const {
  int k = phase_ + y_count();
  if (std::popcount(b & z_) % 2) k += 2;
  return {kPhases[k % 4], b ^ x_};
}

CVector PauliString::apply(const CVector& psi) const {
  if (psi.size() != static_cast<Eigen::Index>(dim_of(n_))) throw std::invalid_argument("PauliString::apply: dimension mismatch");
  CVector out(psi.size());
  const int base = phase_ + y_count();
  for (std::uint64_t b = 0; b < std::uint64_t(psi.size()); ++b) {
    const int k = base + 2 * (std::popcount(b & z_) & 1);
    out(static_cast<Eigen::Index>(b ^ x_)) = kPhases[k % 4] * psi(static_cast<Eigen::Index>(b));
  }
  return out;
}

CMatrix PauliString::matrix() const {
  const std::size_t d = dim_of(n_);
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::uint64_t b = 0; b < d; ++b) {
    auto [a, t] = act(b);
    m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(b)) = a;
  }
  return m;
}

Complex PauliString::expectation(const CVector& psi) const {
  if (psi.size() != static_cast<Eigen::Index>(dim_of(n_))) throw std::invalid_argument("PauliString::expectation: dimension mismatch");
  Complex s = 0.0;
  const int base = phase_ + y_count();
  for (std::uint64_t b = 0; b < std::uint64_t(psi.size()); ++b) {
    const int k = base + 2 * (std::popcount(b & z_) & 1);
    s += std::conj(psi(static_cast<Eigen::Index>(b ^ x_))) * kPhases[k % 4] * psi(static_cast<Eigen::Index>(b));
  }
  return s;
}

Complex PauliString::expectation(const CMatrix& rho) const {
  if (rho.rows() != static_cast<Eigen::Index>(dim_of(n_))) throw std::invalid_argument("PauliString::expectation: dimension mismatch");
  // Tr[P rho] = sum_b <b|P rho|b> = sum_b a_b' rho(b', b) with P|b'> = a|b>.
  Complex s = 0.0;
  for (std::uint64_t b = 0; b < std::uint64_t(rho.rows()); ++b) {
    auto [a, t] = act(b);
    s += a * rho(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(t));
  }
  return s;
}

bool PauliString::operator<(const PauliString& rhs) const {
  if (n_ != rhs.n_) return n_ < rhs.n_;
  // Order by letter string with I<X<Y<Z, qubit 0 first.
  for (int q = 0; q < n_; ++q) {
    const int a = letter_index(letter(q));
    const int b = letter_index(rhs.letter(q));
    if (a != b) return a < b;
  }
  return phase_ < rhs.phase_;
}

std::vector<PauliString> pauli_basis(int n_qubits) {
  static const char letters[4] = {'I', 'X', 'Y', 'Z'};
  const std::size_t count = std::size_t{1} << (2 * n_qubits);
  std::vector<PauliString> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    PauliString p(n_qubits);
    for (int q = 0; q < n_qubits; ++q) {
      const int digit = int((i >> (2 * (n_qubits - 1 - q))) & 3U);
      p.set_letter(q, letters[digit]);
    }
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------

PauliSum::PauliSum(Complex coeff, const PauliString& p) : n_(p.qubits()) {
  terms_.push_back({coeff, p});
}

PauliSum PauliSum::identity(int n_qubits, Complex coeff) {
  return PauliSum(coeff, PauliString::identity(n_qubits));
}

void PauliSum::check_register(int n) const {
  if (n != n_) throw std::invalid_argument("PauliSum: register mismatch");
}

PauliSum PauliSum::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  PauliSum out;
  bool have_register = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string re_s;
    if (!(ls >> re_s)) continue;
    std::string im_s, letters, extra;
    if (!(ls >> im_s >> letters) || (ls >> extra))
      throw std::invalid_argument("PauliSum::parse: line " + std::to_string(line_no) +
                                  ": expected '<re> <im> <letters>'");
    double re = 0, im = 0;
    try {
      std::size_t used = 0;
      re = std::stod(re_s, &used);
      if (used != re_s.size()) throw std::invalid_argument("");
      im = std::stod(im_s, &used);
      if (used != im_s.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument("PauliSum::parse: line " + std::to_string(line_no) +
                                  ": bad coefficient");
    }
    PauliString p = PauliString::parse(letters);
    if (!have_register) {
      out.n_ = p.qubits();
      have_register = true;
    }
    if (p.qubits() != out.n_)
      throw std::invalid_argument("PauliSum::parse: line " + std::to_string(line_no) +
                                  ": inconsistent qubit count");
    out.terms_.push_back({Complex(re, im), p});
  }
  if (!have_register) throw std::invalid_argument("PauliSum::parse: no terms");
  return out;
}

PauliSum PauliSum::from_matrix(const CMatrix& m, double drop_tol) {
  const int n = qubits_of(m.rows());
  if (n < 0 || m.rows() != m.cols()) throw std::invalid_argument("PauliSum::from_matrix: not a 2^n square matrix");
  const double d = double(m.rows());
  PauliSum out(n);
  for (const auto& p : pauli_basis(n)) {
    Complex c = 0.0;
    for (std::uint64_t b = 0; b < std::uint64_t(m.rows()); ++b) {
      auto [a, t] = p.act(b);
      c += std::conj(a) * m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(b));
    }
    c /= d;
    if (std::abs(c) > drop_tol) out.terms_.push_back({c, p});
  }
  return out;
}

PauliSum& PauliSum::add(Complex coeff, const PauliString& p) {
  if (terms_.empty() && n_ == 0) n_ = p.qubits();
  check_register(p.qubits());
  terms_.push_back({coeff, p});
  return *this;
}

PauliSum& PauliSum::operator+=(const PauliSum& rhs) {
  if (terms_.empty() && n_ == 0) n_ = rhs.n_;
  check_register(rhs.n_);
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& rhs) { return *this += rhs * Complex(-1.0); }

PauliSum& PauliSum::operator*=(Complex s) {
  for (auto& t : terms_) t.coeff *= s;
  return *this;
}

PauliSum PauliSum::operator+(const PauliSum& rhs) const {
  PauliSum out = *this;
  out += rhs;
  return out;
}

PauliSum PauliSum::operator-(const PauliSum& rhs) const {
  PauliSum out = *this;
  out -= rhs;
  return out;
}

PauliSum PauliSum::operator*(const PauliSum& rhs) const {
  check_register(rhs.n_);
  PauliSum out(n_);
  for (const auto& a : terms_)
    for (const auto& b : rhs.terms_) out.terms_.push_back({a.coeff * b.coeff, a.pauli * b.pauli});
  return out;
}

PauliSum PauliSum::operator*(Complex s) const {
  PauliSum out = *this;
  out *= s;
  return out;
}

PauliSum PauliSum::simplified(double tol) const {
  std::vector<PauliTerm> flat;
  flat.reserve(terms_.size());
  for (const auto& t : terms_) flat.push_back({t.coeff * t.pauli.phase(), t.pauli.without_phase()});
  std::sort(flat.begin(), flat.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.pauli < b.pauli; });
  PauliSum out(n_);
  for (const auto& t : flat) {
    if (!out.terms_.empty() && out.terms_.back().pauli.same_letters(t.pauli))
      out.terms_.back().coeff += t.coeff;
    else
      out.terms_.push_back(t);
  }
  std::erase_if(out.terms_, [tol](const PauliTerm& t) { return std::abs(t.coeff) <= tol; });
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& t : simplified(0.0).terms_)
    if (std::abs(t.coeff.imag()) > tol) return false;
  return true;
}

void PauliSum::require_hermitian(const char* where) const {
  if (!is_hermitian()) throw std::invalid_argument(std::string(where) + ": operator is not Hermitian");
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_);
  for (const auto& t : terms_) {
    PauliString p = t.pauli;
    // (i^k P)^dagger = i^{-k} P for Hermitian letter strings.
    p.set_phase_power(-p.phase_power());
    out.terms_.push_back({std::conj(t.coeff), p});
  }
  return out;
}

std::vector<std::pair<double, PauliString>> PauliSum::real_terms() const {
  require_hermitian("PauliSum::real_terms");
  std::vector<std::pair<double, PauliString>> out;
  for (const auto& t : simplified().terms_) out.emplace_back(t.coeff.real(), t.pauli);
  return out;
}

double PauliSum::one_norm() const {
  double s = 0.0;
  for (const auto& t : simplified().terms_) s += std::abs(t.coeff);
  return s;
}

CVector PauliSum::apply(const CVector& psi) const {
  if (psi.size() != static_cast<Eigen::Index>(dim_of(n_))) throw std::invalid_argument("PauliSum::apply: dimension mismatch");
  CVector out = CVector::Zero(psi.size());
  for (const auto& t : terms_) {
    const int base = t.pauli.phase_power() + t.pauli.y_count();
    const std::uint64_t x = t.pauli.x_mask(), z = t.pauli.z_mask();
    for (std::uint64_t b = 0; b < std::uint64_t(psi.size()); ++b) {
      const int k = base + 2 * (std::popcount(b & z) & 1);
      out(static_cast<Eigen::Index>(b ^ x)) += t.coeff * kPhases[k % 4] * psi(static_cast<Eigen::Index>(b));
    }
  }
  return out;
}

CMatrix PauliSum::matrix() const {
  const std::size_t d = dim_of(n_);
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (const auto& t : terms_)
    for (std::uint64_t b = 0; b < d; ++b) {
      auto [a, target] = t.pauli.act(b);
      m(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(b)) += t.coeff * a;
    }
  return m;
}

Complex PauliSum::expectation(const CVector& psi) const {
  Complex s = 0.0;
  for (const auto& t : terms_) s += t.coeff * t.pauli.expectation(psi);
  return s;
}

Complex PauliSum::expectation(const CMatrix& rho) const {
  Complex s = 0.0;
  for (const auto& t : terms_) s += t.coeff * t.pauli.expectation(rho);
  return s;
}

std::string PauliSum::to_text() const {
  std::string out;
  char buf[128];
  for (const auto& t : terms_) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g ", t.coeff.real(), t.coeff.imag());
    out += buf;
    out += t.pauli.to_string();
    out += '\n';
  }
  return out;
}

}  // namespace nisq
