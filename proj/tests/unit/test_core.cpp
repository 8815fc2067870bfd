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

#include <cmath>

#include "doctest.h"
#include "nisq/core/hamiltonian.hpp"
#include "nisq/core/simulator.hpp"
#include "oracle.hpp"

using namespace nisq;

namespace {

std::string random_letters(int n, Rng& rng) {
  static const char L[4] = {'I', 'X', 'Y', 'Z'};
  std::string s;
  for (int i = 0; i < n; ++i) s += L[rng.index(4)];
  return s;
}

// Random circuit mixing fixed gates and rotations with shared slots.
ParametrisedCircuit random_circuit(int n, int n_params, int n_gates, Rng& rng) {
  ParametrisedCircuit c(n, n_params);
  for (int g = 0; g < n_gates; ++g) {
    const int q = int(rng.index(n));
    switch (rng.index(5)) {
      case 0: c.h(q); break;
      case 1:
        if (n > 1) c.cnot(q, (q + 1) % n);
        break;
      case 2: c.s(q); break;
      default: {
        std::string letters = random_letters(n, rng);
        if (letters == std::string(n, 'I')) letters[q] = 'Y';
        const double scale = rng.uniform() < 0.5 ? 0.5 : 1.0;
        c.rotation(PauliString::parse(letters), int(rng.index(n_params)), scale, rng.uniform());
      }
    }
  }
  return c;
}

RVector random_params(int n, Rng& rng) {
  RVector t(n);
  for (int i = 0; i < n; ++i) t(i) = 2 * M_PI * rng.uniform() - M_PI;
  return t;
}

}  // namespace

TEST_CASE("pauli string product table and phases") {
  auto X = PauliString::parse("X"), Y = PauliString::parse("Y"), Z = PauliString::parse("Z");
  CHECK((X * Y).to_string() == "iZ");
  CHECK((Y * X).to_string() == "-iZ");
  CHECK((Y * Z).to_string() == "iX");
  CHECK((Z * X).to_string() == "iY");
  CHECK((X * Z).to_string() == "-iY");
  CHECK((X * X).to_string() == "I");
  CHECK(X.commutes_with(X));
  CHECK_FALSE(X.commutes_with(Z));
  CHECK(PauliString::parse("XX").commutes_with(PauliString::parse("ZZ")));
}

TEST_CASE("pauli matrices match Kronecker products") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + int(rng.index(3));
    std::string s = random_letters(n, rng);
    CHECK(oracle::max_abs(PauliString::parse(s).matrix() - oracle::pauli(s)) == 0.0);
  }
}

TEST_CASE("pauli products are associative and agree with dense products") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + int(rng.index(2));
    auto p = PauliString::parse(random_letters(n, rng));
    auto q = PauliString::parse(random_letters(n, rng));
    auto r = PauliString::parse(random_letters(n, rng));
    p.set_phase_power(int(rng.index(4)));
    CHECK((p * q) * r == p * (q * r));
    const CMatrix dense = p.matrix() * q.matrix() * r.matrix();
    CHECK(oracle::max_abs(((p * q) * r).matrix() - dense) < 1e-14);
  }
}

TEST_CASE("pauli sum text format round-trips exactly") {
  PauliSum h(3);
  h.add(Complex(0.1, 0.0), PauliString::parse("XZI"));
  h.add(Complex(-1.0 / 3.0, 2e-17), PauliString::parse("YYZ"));
  h.add(Complex(M_PI, -M_E), PauliString::parse("-iIIX"));
  PauliSum back = PauliSum::parse(h.to_text());
  REQUIRE(back.size() == h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    CHECK(back.terms()[i].coeff == h.terms()[i].coeff);
    CHECK(back.terms()[i].pauli == h.terms()[i].pauli);
  }
  CHECK_THROWS_AS(PauliSum::parse("0.5 XZ"), std::invalid_argument);
  CHECK_THROWS_AS(PauliSum::parse("0.5 0 XZ\n1 0 X"), std::invalid_argument);
  CHECK_THROWS_AS(PauliSum::parse("0.5 0 XQ"), std::invalid_argument);
}

TEST_CASE("pauli sum hermiticity and dense expansion") {
  PauliSum h = PauliSum::parse("0.5 0 XZ\n0 0.5 YZ\n0 -0.5 YZ");
  CHECK(h.is_hermitian());
  PauliSum a = PauliSum::parse("0.5 0 XZ\n0 0.5 YZ");
  CHECK_FALSE(a.is_hermitian());
  // i * (iXZ) = -XZ is Hermitian even though both factors are complex.
  PauliSum b(Complex(0, 1), PauliString::parse("iXZ"));
  CHECK(b.is_hermitian());
  CHECK(oracle::max_abs(b.matrix() + oracle::pauli("XZ")) < 1e-15);
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    PauliSum s(3);
    std::vector<std::pair<oracle::C, std::string>> ref;
    for (int t = 0; t < 5; ++t) {
      auto l = random_letters(3, rng);
      Complex c(rng.normal(), rng.normal());
      s.add(c, PauliString::parse(l));
      ref.emplace_back(c, l);
    }
    CHECK(oracle::max_abs(s.matrix() - oracle::sum(ref)) < 1e-13);
    CHECK(oracle::max_abs(PauliSum::from_matrix(s.matrix()).matrix() - s.matrix()) < 1e-13);
  }
}

TEST_CASE("expectation values") {
  auto z = PauliSum::parse("1 0 Z");
  CHECK(expectation(QuantumState::zero(1), z) == doctest::Approx(1.0));
  auto zz = PauliSum::parse("1 0 ZZ");
  CHECK(expectation(QuantumState::basis(2, 1), zz) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(expectation(QuantumState::zero(1), PauliSum::parse("0 1 Z")), std::invalid_argument);

  Rng rng(17);
  CVector psi = random_state(3, rng);
  PauliSum m(3);
  std::vector<std::pair<oracle::C, std::string>> ref;
  for (int t = 0; t < 5; ++t) {
    auto l = random_letters(3, rng);
    const double w = rng.normal();
    m.add(w, PauliString::parse(l));
    ref.emplace_back(w, l);
  }
  const double want = (psi.adjoint() * oracle::sum(ref) * psi)(0).real();
  CHECK(expectation(psi, m) == doctest::Approx(want).epsilon(1e-13));
  CMatrix rho = random_density(3, 2, rng);
  const double want_rho = (oracle::sum(ref) * rho).trace().real();
  CHECK(expectation(rho, m) == doctest::Approx(want_rho).epsilon(1e-13));
}

TEST_CASE("apply_circuit examples") {
  ParametrisedCircuit empty(1);
  CHECK((prepare(empty, RVector()) - oracle::ket("0")).norm() == 0.0);

  ParametrisedCircuit rx(1);
  rx.rx(0, 0);
  RVector th(1);
  th << M_PI;
  CVector out = prepare(rx, th);
  oracle::Vec want = oracle::expm(oracle::C(0, -M_PI / 2) * oracle::pauli("X")) * oracle::ket("0");
  CHECK((out - want).norm() < 1e-14);
  CHECK(std::abs(out(1) - Complex(0, -1)) < 1e-14);

  ParametrisedCircuit bell(2);
  bell.h(0).cnot(0, 1);
  CVector b = prepare(bell, RVector());
  CHECK(std::abs(b(0) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(b(3) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(b(1)) + std::abs(b(2)) < 1e-15);

  RVector bad(2);
  bad << 0.1, 0.2;
  CHECK_THROWS_AS(prepare(rx, bad), std::invalid_argument);
  th(0) = std::nan("");
  CHECK_THROWS_AS(prepare(rx, th), std::invalid_argument);
  CHECK_THROWS_AS(apply_circuit(rx, RVector::Zero(1), CVector(CVector::Zero(4))), std::invalid_argument);
}

TEST_CASE("gate matrices agree with dense oracle on the qubit ordering") {
  ParametrisedCircuit c(3);
  c.cnot(0, 2);
  oracle::Mat want = oracle::Mat::Zero(8, 8);
  for (int b = 0; b < 8; ++b) {
    int t = (b & 4) ? (b ^ 1) : b;
    want(t, b) = 1;
  }
  CHECK(oracle::max_abs(circuit_unitary(c, RVector()) - want) == 0.0);
  ParametrisedCircuit r(2);
  r.rotation(PauliString::parse("XY"), 0, 0.5, 0.25);
  RVector th(1);
  th << 0.7;
  oracle::Mat u = oracle::expm(oracle::C(0, -(0.35 + 0.25)) * oracle::pauli("XY"));
  CHECK(oracle::max_abs(circuit_unitary(r, th) - u) < 1e-14);
  ParametrisedCircuit h(2);
  h.h(1);
  CHECK(oracle::max_abs(circuit_unitary(h, RVector()) - oracle::on(2, 1, oracle::single('H'))) < 1e-15);
}

TEST_CASE("norm preservation and unitarity on random circuits") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + int(rng.index(4));
    auto c = random_circuit(n, 4, 12, rng);
    RVector th = random_params(c.num_params(), rng);
    CVector out = apply_circuit(c, th, random_state(n, rng));
    CHECK(std::abs(out.norm() - 1.0) < 1e-10);
    CHECK(is_unitary(circuit_unitary(c, th), 1e-12));
    CHECK(oracle::max_abs(circuit_unitary(c.inverse(), th) * circuit_unitary(c, th) -
                          oracle::identity(n)) < 1e-12);
  }
}

TEST_CASE("density-matrix evolution matches U rho U^dagger") {
  Rng rng(29);
  auto c = random_circuit(3, 3, 10, rng);
  RVector th = random_params(c.num_params(), rng);
  CMatrix rho = random_density(3, 3, rng);
  CMatrix u = circuit_unitary(c, th);
  CHECK(oracle::max_abs(apply_circuit(c, th, rho) - u * rho * u.adjoint()) < 1e-13);
}

TEST_CASE("rotation generators follow the half-angle convention") {
  ParametrisedCircuit c(1);
  c.rx(0, 0);
  auto gens = c.gates()[0].generators();
  REQUIRE(gens.size() == 1);
  CHECK(gens[0].g == Complex(0, -0.5));
  CHECK(gens[0].sigma.letters() == "X");
  ParametrisedCircuit d(1);
  d.rx(0, 0, 1.0);
  CHECK(d.gates()[0].generators()[0].g == Complex(0, -1.0));
}

TEST_CASE("derivative states match central finite differences") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + int(rng.index(4));
    const int np = 1 + int(rng.index(8));
    auto c = random_circuit(n, np, 14, rng);
    RVector th = random_params(c.num_params(), rng);
    auto d = derivative_states(c, th);
    const double h = 1e-5;
    for (int k = 0; k < c.num_params(); ++k) {
      RVector p = th, m = th;
      p(k) += h;
      m(k) -= h;
      CVector fd = (prepare(c, p) - prepare(c, m)) / (2 * h);
      CHECK((fd - d[k]).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("sampled expectation") {
  ShotSettings s{1000, 7};
  CVector plus = CVector::Constant(2, 1 / std::sqrt(2.0));
  auto x = PauliSum::parse("1 0 X");
  auto e = sampled_expectation(QuantumState::from_vector(plus), x, s);
  CHECK(e.value == 1.0);
  CHECK(e.std_error == 0.0);

  ShotSettings big{10000, 99};
  auto z0 = sampled_expectation(QuantumState::zero(1), x, big);
  CHECK(std::abs(z0.value) < 3.0 / 100.0);
  CHECK(z0.std_error == doctest::Approx(0.01).epsilon(0.01));
  auto again = sampled_expectation(QuantumState::zero(1), x, big);
  CHECK(again.value == z0.value);
  CHECK(again.std_error == z0.std_error);
  CHECK_THROWS_AS(sampled_expectation(QuantumState::zero(1), x, ShotSettings{0, 1}), std::invalid_argument);
}

TEST_CASE("hadamard test exact and ancilla forms") {
  ParametrisedCircuit id(1);
  CVector zero = oracle::ket("0");
  CHECK(hadamard_test_exact(id, RVector(), id, RVector(), 0.0, zero) == doctest::Approx(1.0));
  ParametrisedCircuit xg(1);
  xg.x(0);
  CHECK(std::abs(hadamard_test_exact(xg, RVector(), id, RVector(), 0.0, zero)) < 1e-15);
  CHECK(std::abs(hadamard_test_circuit(xg, RVector(), id, RVector(), 0.0, zero)) < 1e-15);

  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + int(rng.index(2));
    auto u = random_circuit(n, 3, 8, rng);
    auto v = random_circuit(n, 2, 8, rng);
    RVector tu = random_params(u.num_params(), rng), tv = random_params(v.num_params(), rng);
    CVector ref = random_state(n, rng);
    const double phase = 2 * M_PI * rng.uniform();
    const double a = hadamard_test_exact(u, tu, v, tv, phase, ref);
    const double b = hadamard_test_circuit(u, tu, v, tv, phase, ref);
    CHECK(std::abs(a - b) < 1e-10);
    if (n == 2 && trial % 10 == 0) {
      oracle::Vec ua = circuit_unitary(u, tu) * ref, vb = circuit_unitary(v, tv) * ref;
      const double want = (std::polar(1.0, phase) * vb.dot(ua)).real();
      CHECK(std::abs(a - want) < 1e-12);
    }
  }
  ParametrisedCircuit two(2);
  CHECK_THROWS_AS(hadamard_test_exact(id, RVector(), two, RVector(), 0, zero), std::invalid_argument);
}

TEST_CASE("swap test") {
  auto z0 = QuantumState::zero(1), z1 = QuantumState::basis(1, 1);
  for (auto mode : {SwapMode::Ancilla, SwapMode::Destructive}) {
    CHECK(swap_test(z0, z0, mode).value == doctest::Approx(1.0));
    CHECK(std::abs(swap_test(z0, z1, mode).value) < 1e-15);
  }
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    auto r = QuantumState::from_density(random_density(2, 2, rng));
    auto s = QuantumState::from_density(random_density(2, 3, rng));
    const double want = (r.density() * s.density()).trace().real();
    CHECK(swap_test(r, s, SwapMode::Ancilla).value == doctest::Approx(want).epsilon(1e-12));
    CHECK(swap_test(r, s, SwapMode::Destructive).value == doctest::Approx(want).epsilon(1e-12));
    const double purity = (r.density() * r.density()).trace().real();
    CHECK(swap_test(r, r, SwapMode::Destructive).value == doctest::Approx(purity).epsilon(1e-12));
    CHECK(swap_test(r, r, SwapMode::Ancilla).value == doctest::Approx(purity).epsilon(1e-12));
    for (auto mode : {SwapMode::Ancilla, SwapMode::Destructive}) {
      auto est = swap_test(r, s, mode, ShotSettings{20000, std::uint64_t(trial)});
      CHECK(std::abs(est.value - want) < 3 * est.std_error + 1e-12);
    }
  }
  CHECK_THROWS_AS(swap_test(z0, QuantumState::zero(2), SwapMode::Ancilla), std::invalid_argument);
}

TEST_CASE("jordan-wigner") {
  auto a1 = jordan_wigner(1, 1, LadderKind::Create);
  CHECK(oracle::max_abs(a1.matrix() - 0.5 * (oracle::pauli("X") + oracle::C(0, 1) * oracle::pauli("Y"))) < 1e-15);
  auto a12 = jordan_wigner(1, 2, LadderKind::Create).simplified();
  REQUIRE(a12.size() == 2);
  CHECK(a12.terms()[0].pauli.letters() == "XZ");
  CHECK(a12.terms()[0].coeff == Complex(0.5, 0));
  CHECK(a12.terms()[1].pauli.letters() == "YZ");
  CHECK(a12.terms()[1].coeff == Complex(0, 0.5));
  const int n = 3;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      CMatrix a = jordan_wigner(i, n, LadderKind::Annihilate).matrix();
      CMatrix ad = jordan_wigner(j, n, LadderKind::Create).matrix();
      CMatrix anti = a * ad + ad * a;
      CMatrix want = (i == j ? 1.0 : 0.0) * oracle::identity(n);
      CHECK(oracle::max_abs(anti - want) < 1e-15);
      CMatrix aj = jordan_wigner(j, n, LadderKind::Annihilate).matrix();
      CHECK(oracle::max_abs(a * aj + aj * a) < 1e-15);
    }
  CHECK_THROWS_AS(jordan_wigner(0, 2, LadderKind::Create), std::out_of_range);
  CHECK_THROWS_AS(jordan_wigner(3, 2, LadderKind::Create), std::out_of_range);
}

TEST_CASE("trotterisation") {
  auto commuting = PauliSum::parse("1 0 ZI\n0.5 0 IZ");
  oracle::Mat exact = oracle::expm(oracle::C(0, -0.8) * commuting.matrix());
  CHECK(oracle::max_abs(circuit_unitary(trotterize(commuting, 0.8, 1), RVector()) - exact) < 1e-14);

  auto h = PauliSum::parse("1 0 X\n1 0 Z");
  oracle::Mat u = oracle::expm(oracle::C(0, -1.0) * h.matrix());
  auto err = [&](int steps) {
    CMatrix d = circuit_unitary(trotterize(h, 1.0, steps), RVector()) - u;
    return Eigen::JacobiSVD<CMatrix>(d).singularValues()(0);
  };
  CHECK(err(100) < 1e-2);
  CHECK(err(100) / err(200) == doctest::Approx(2.0).epsilon(0.02));
  CHECK_THROWS_AS(trotterize(h, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(trotterize(PauliSum::parse("0 1 X"), 1.0, 2), std::invalid_argument);
}

TEST_CASE("capacity limits") {
  CHECK_THROWS_AS(QuantumState::zero(15), CapacityError);
  CHECK_NOTHROW(QuantumState::zero(14));
  CHECK_THROWS_AS(QuantumState::from_density(CMatrix::Identity(256, 256) / 256.0), CapacityError);
}

TEST_CASE("partial trace of a product state") {
  Rng rng(47);
  CMatrix a = random_density(1, 2, rng), b = random_density(2, 2, rng);
  CMatrix ab = oracle::kron(a, b);
  CHECK(oracle::max_abs(partial_trace(ab, 3, {0}) - a) < 1e-14);
  CHECK(oracle::max_abs(partial_trace(ab, 3, {1, 2}) - b) < 1e-14);
}
