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
#include <limits>

#include "doctest.h"
#include "nisq/core/random.hpp"
#include "nisq/core/simulator.hpp"
#include "nisq/noise/boost.hpp"
#include "nisq/noise/lindblad.hpp"
#include "nisq/noise/noise_model.hpp"
#include "nisq/noise/trajectory.hpp"
#include "oracle.hpp"

using namespace nisq;

namespace {

// Depolarizing map written straight from its Pauli-sum definition.
oracle::Mat depolarize(const oracle::Mat& rho, double p) {
  oracle::Mat out = (1.0 - 0.75 * p) * rho;
  for (char c : {'X', 'Y', 'Z'}) out += 0.25 * p * oracle::pauli(c) * rho * oracle::pauli(c);
  return out;
}

// Choi matrix of a channel, for complete-positivity checks.
double min_choi_eigenvalue(const QuantumChannel& c) {
  const Eigen::Index d = static_cast<Eigen::Index>(c.dim());
  CMatrix choi = CMatrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      CMatrix e = CMatrix::Zero(d, d);
      e(i, j) = 1.0;
      choi.block(i * d, j * d, d, d) = c.apply(e);
    }
  return oracle::spectrum(choi).minCoeff();
}

ParametrisedCircuit random_gates(int n, int count, Rng& rng) {
  ParametrisedCircuit c(n, 1);
  for (int g = 0; g < count; ++g) {
    const int q = int(rng.index(n));
    switch (rng.index(4)) {
      case 0: c.h(q); break;
      case 1: c.cnot(q, (q + 1) % n); break;
      case 2: c.ry(q, 0); break;
      default: c.s(q);
    }
  }
  return c;
}

}  // namespace

TEST_CASE("depolarizing channel follows its Pauli-sum definition") {
  Rng rng(11);
  for (double p : {0.0, 0.1, 0.5, 1.0, 4.0 / 3.0}) {
    QuantumChannel c = depolarizing_channel(p);
    CHECK(c.kraus.size() == 4);
    CHECK(c.tp_error() < 1e-12);
    CHECK(min_choi_eigenvalue(c) > -1e-12);
    for (int trial = 0; trial < 5; ++trial) {
      CMatrix rho = random_density(1, 2, rng);
      CHECK(oracle::max_abs(c.apply(rho) - depolarize(rho, p)) < 1e-14);
    }
  }
  CHECK(depolarizing_channel(0.0).is_identity());
  // Direct evaluation of the formula on |0><0|: diag(1 - p/2, p/2).
  const CMatrix zero = oracle::ket("0") * oracle::ket("0").adjoint();
  CMatrix at1 = depolarizing_channel(1.0).apply(zero);
  CHECK(std::abs(at1(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(at1(1, 1) - 0.5) < 1e-15);
  CMatrix at43 = depolarizing_channel(4.0 / 3.0).apply(zero);
  CHECK(std::abs(at43(0, 0) - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(at43(1, 1) - 2.0 / 3.0) < 1e-15);
  CHECK_THROWS(depolarizing_channel(-0.01));
  CHECK_THROWS(depolarizing_channel(4.0 / 3.0 + 1e-6));
}

TEST_CASE("two-qubit depolarizing and named factories") {
  Rng rng(12);
  const double p = 0.07;
  QuantumChannel c = depolarizing_channel(p, 2);
  CHECK(c.arity == 2);
  CMatrix rho = random_density(2, 4, rng);
  CHECK(oracle::max_abs(c.apply(rho) - ((1 - p) * rho + p * oracle::identity(2) / 4.0)) < 1e-14);
  CHECK(oracle::max_abs(depolarizing_channel(p, 1).superoperator() - depolarizing_channel(p).superoperator()) < 1e-14);

  for (const char* name : {"identity", "depolarizing", "amplitude_damping", "dephasing", "bit_flip"})
    for (int k : {1, 2}) {
      QuantumChannel m = make_channel(name, 0.1, k);
      CHECK(m.arity == k);
      CHECK(m.tp_error() < 1e-10);
      CHECK(min_choi_eigenvalue(m) > -1e-12);
    }
  CHECK_THROWS(make_channel("nope", 0.1, 1));
  CHECK_THROWS(make_channel("depolarizing", 0.1, 3));

  // Amplitude damping against its textbook Kraus pair.
  const double g = 0.3;
  CMatrix a = amplitude_damping_channel(g).apply(oracle::ket("1") * oracle::ket("1").adjoint());
  CHECK(std::abs(a(0, 0) - g) < 1e-15);
  CHECK(std::abs(a(1, 1) - (1 - g)) < 1e-15);
}

TEST_CASE("noisy circuit execution") {
  Rng rng(13);
  SUBCASE("identity channels reproduce the ideal circuit") {
    NoiseModel noise;
    noise.one_qubit = identity_channel(1);
    noise.two_qubit = identity_channel(2);
    noise.strict = true;
    ParametrisedCircuit c = random_gates(3, 12, rng);
    RVector theta(1);
    theta << 0.37;
    CMatrix rho = random_density(3, 3, rng);
    CHECK(oracle::max_abs(run_noisy_circuit(c, theta, noise, rho) - apply_circuit(c, theta, rho)) < 1e-12);
  }
  SUBCASE("X gate then depolarizing") {
    const double p = 0.1;
    NoiseModel noise;
    noise.one_qubit = depolarizing_channel(p);
    ParametrisedCircuit c(1);
    c.x(0);
    QuantumState out = run_noisy_circuit(c, RVector(0), noise, QuantumState::zero(1));
    const oracle::Mat expect = (1 - p / 2) * oracle::ket("1") * oracle::ket("1").adjoint() +
                               (p / 2) * oracle::ket("0") * oracle::ket("0").adjoint();
    CHECK(oracle::max_abs(out.density() - expect) < 1e-14);
  }
  SUBCASE("trace stays one") {
    NoiseModel noise;
    noise.one_qubit = depolarizing_channel(0.01);
    noise.two_qubit = depolarizing_channel(0.01, 2);
    for (int trial = 0; trial < 10; ++trial) {
      ParametrisedCircuit c = random_gates(3, 10, rng);
      RVector theta = RVector::Constant(1, rng.uniform());
      CMatrix out = run_noisy_circuit(c, theta, noise, QuantumState::zero(3).density());
      CHECK(std::abs(out.trace() - 1.0) < 1e-10);
      CHECK(oracle::spectrum(out).minCoeff() > -1e-12);
    }
  }
  SUBCASE("gate-name channels take precedence; strict mode rejects gaps") {
    NoiseModel noise;
    noise.one_qubit = depolarizing_channel(0.2);
    noise.by_name["H"] = identity_channel(1);
    ParametrisedCircuit c(1);
    c.h(0).h(0);
    CMatrix out = run_noisy_circuit(c, RVector(0), noise, QuantumState::zero(1).density());
    CHECK(std::abs(out(0, 0) - 1.0) < 1e-14);
    ParametrisedCircuit r(2, 1);
    r.ry(1, 0);
    noise.by_name["RY"] = amplitude_damping_channel(1.0);
    RVector theta(1);
    theta << M_PI;
    CHECK(std::abs(run_noisy_circuit(r, theta, noise, QuantumState::zero(2).density())(0, 0) - 1.0) < 1e-14);

    NoiseModel strict;
    strict.one_qubit = identity_channel(1);
    strict.strict = true;
    ParametrisedCircuit two(2);
    two.h(0).cnot(0, 1);
    CHECK_THROWS(run_noisy_circuit(two, RVector(0), strict, QuantumState::zero(2).density()));
    strict.strict = false;
    CHECK_NOTHROW(run_noisy_circuit(two, RVector(0), strict, QuantumState::zero(2).density()));
  }
  SUBCASE("channel acts on control then target") {
    // Amplitude damping on the control only, via a hand-built 2-qubit channel.
    NoiseModel noise;
    noise.by_name["CNOT"] = amplitude_damping_channel(1.0).tensor(identity_channel(1));
    ParametrisedCircuit c(2);
    c.x(1).cnot(1, 0);  // control 1, target 0: |11>
    CMatrix out = run_noisy_circuit(c, RVector(0), noise, QuantumState::zero(2).density());
    // Control (qubit 1) decays to 0, target stays 1: |10>.
    CHECK(std::abs(out(2, 2) - 1.0) < 1e-14);
  }
}

TEST_CASE("Lindblad integration") {
  Rng rng(14);
  SUBCASE("no jumps is unitary evolution") {
    PauliSum h = PauliSum::parse("0.7 0 XZ\n0.3 0 YI\n-0.4 0 IZ\n");
    LindbladSystem sys(h, {});
    CMatrix rho0 = random_density(2, 2, rng);
    const double t = 0.8;
    oracle::Mat u = oracle::expm(oracle::C(0, -t) * oracle::sum({{0.7, "XZ"}, {0.3, "YI"}, {-0.4, "IZ"}}));
    CHECK(oracle::max_abs(lindblad_evolve(sys, rho0, t, 1e-3) - u * rho0 * u.adjoint()) < 1e-10);
  }
  SUBCASE("amplitude damping empties |1> at rate 2 gamma") {
    const double gamma = 0.5;
    LindbladSystem sys(PauliSum(1), {std::sqrt(gamma) * sigma_minus()});
    CMatrix rho = oracle::ket("1") * oracle::ket("1").adjoint();
    const std::vector<double> times = {0.1, 0.5, 1.0, 2.0};
    auto states = lindblad_evolve(sys, rho, times, 1e-3);
    for (std::size_t i = 0; i < times.size(); ++i) {
      CHECK(std::abs(states[i](1, 1).real() - std::exp(-2 * gamma * times[i])) < 1e-10);
      CHECK(std::abs(states[i].trace() - 1.0) < 1e-8);
    }
  }
  SUBCASE("generator is traceless") {
    PauliSum h = PauliSum::parse("1 0 XY\n0.5 0 ZZ\n");
    LindbladSystem sys(h, {0.3 * oracle::kron(oracle::identity(1), sigma_minus()),
                           0.2 * oracle::pauli("ZI")});
    for (int trial = 0; trial < 20; ++trial) CHECK(std::abs(sys.rhs(random_density(2, 4, rng)).trace()) < 1e-12);
  }
  SUBCASE("coarse steps are reported") {
    LindbladSystem sys(PauliSum::parse("5 0 X\n"), {std::sqrt(3.0) * sigma_minus()});
    CHECK_THROWS_AS(lindblad_evolve(sys, oracle::ket("1") * oracle::ket("1").adjoint(), 1.0, 0.5), StepSizeError);
    CHECK_NOTHROW(lindblad_evolve(sys, oracle::ket("1") * oracle::ket("1").adjoint(), 1.0, 0.01));
  }
  SUBCASE("non-Hermitian Hamiltonian is rejected") {
    CHECK_THROWS(LindbladSystem(PauliSum::parse("0 1 X\n"), {}));
  }
}

TEST_CASE("quantum-jump trajectories") {
  SUBCASE("no jump operators: Schrodinger evolution") {
    LindbladSystem sys(PauliSum::parse("1 0 X\n"), {});
    Trajectory tr = sse_trajectory(sys, oracle::ket("0"), 1.0, 1e-3, 5);
    CHECK(tr.jumps.empty());
    oracle::Vec expect = oracle::expm(oracle::C(0, -1) * oracle::pauli("X")) * oracle::ket("0");
    CHECK((tr.states.back() - expect).norm() < 1e-10);
  }
  SUBCASE("amplitude damping ensemble matches the master equation") {
    const double gamma = 0.5, dt = 1e-3, t = 1.0;
    LindbladSystem sys(PauliSum(1), {std::sqrt(gamma) * sigma_minus()});
    TrajectoryEnsemble ens = sse_ensemble(sys, oracle::ket("1"), t, dt, 10000, 99, 2);
    CHECK(ens.count == 10000);
    for (std::size_t s = 0; s < ens.times.size(); s += 200) {
      const double exact = std::exp(-2 * gamma * ens.times[s]);
      const double sigma = std::sqrt(std::max(ens.population_variance[s](1), 1e-12) / 10000.0);
      CHECK(std::abs(ens.mean[s](1, 1).real() - exact) < 3 * sigma + 1e-12);
      CHECK(std::abs(ens.mean[s].trace() - 1.0) < 1e-12);
    }
  }
  SUBCASE("trajectories stay normalised; jump times increase") {
    LindbladSystem sys(PauliSum::parse("0.5 0 X\n"), {0.6 * sigma_minus(), 0.3 * oracle::pauli("Z")});
    Trajectory tr = sse_trajectory(sys, oracle::ket("1"), 20.0, 1e-3, 21);
    for (const auto& psi : tr.states) CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
    for (std::size_t i = 1; i < tr.jumps.size(); ++i) CHECK(tr.jumps[i].time > tr.jumps[i - 1].time);
    CHECK(!tr.jumps.empty());
  }
  SUBCASE("empty jump record equals the no-jump drift") {
    LindbladSystem sys(PauliSum::parse("0.3 0 X\n"), {0.3 * sigma_minus()});
    oracle::Vec psi0 = (oracle::ket("0") + oracle::ket("1")) / std::sqrt(2.0);
    int found = 0;
    for (std::uint64_t seed = 0; seed < 50 && found < 3; ++seed) {
      Trajectory tr = sse_trajectory(sys, psi0, 1.0, 1e-3, seed);
      if (!tr.jumps.empty()) continue;
      ++found;
      CHECK((tr.states.back() - sse_drift(sys, psi0, 1.0, 1e-3)).norm() < 1e-14);
    }
    CHECK(found > 0);
  }
  SUBCASE("results do not depend on the thread count") {
    LindbladSystem sys(PauliSum::parse("0.4 0 X\n"), {0.5 * sigma_minus()});
    auto a = sse_ensemble(sys, oracle::ket("1"), 0.5, 1e-3, 300, 7, 1);
    auto b = sse_ensemble(sys, oracle::ket("1"), 0.5, 1e-3, 300, 7, 3);
    CHECK(oracle::max_abs(a.mean.back() - b.mean.back()) == 0.0);
  }
  SUBCASE("rejects oversized steps and unnormalised input") {
    LindbladSystem sys(PauliSum(1), {3.0 * sigma_minus()});
    CHECK_THROWS(sse_trajectory(sys, oracle::ket("1"), 1.0, 0.01, 1));
    CHECK_THROWS(sse_trajectory(sys, 2.0 * oracle::ket("1"), 1.0, 1e-4, 1));
  }
}

TEST_CASE("Pauli twirling") {
  Rng rng(15);
  SUBCASE("Pauli channels are fixed points") {
    QuantumChannel c = pauli_channel({{"I", 0.7}, {"X", 0.1}, {"Y", 0.05}, {"Z", 0.15}});
    CHECK(oracle::max_abs(pauli_twirl(c).superoperator() - c.superoperator()) < 1e-12);
  }
  SUBCASE("coherent Z rotation becomes a dephasing channel") {
    for (double eps : {0.01, 0.1, 0.7}) {
      QuantumChannel rot = unitary_channel(oracle::expm(oracle::C(0, -eps / 2) * oracle::pauli("Z")));
      QuantumChannel tw = pauli_twirl(rot);
      auto probs = pauli_error_probabilities(tw);
      CHECK(std::abs(probs["Z"] - std::pow(std::sin(eps / 2), 2)) < 1e-12);
      CHECK(std::abs(probs["X"]) < 1e-12);
      CHECK(std::abs(probs["Y"]) < 1e-12);
      RMatrix r = tw.ptm();
      CHECK((r - RMatrix(r.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("idempotent on random channels, one and two qubits") {
    for (int k : {1, 2}) {
      const auto d = static_cast<Eigen::Index>(1 << k);
      std::vector<CMatrix> kraus;
      CMatrix u = random_unitary(d * 2, rng);
      for (Eigen::Index i = 0; i < 2; ++i) kraus.push_back(u.block(i * d, 0, d, d));
      QuantumChannel c = QuantumChannel::from_kraus("random", kraus);
      QuantumChannel once = pauli_twirl(c);
      QuantumChannel twice = pauli_twirl(once);
      CHECK(oracle::max_abs(once.superoperator() - twice.superoperator()) < 1e-12);
      RMatrix r = once.ptm();
      CHECK((r - RMatrix(r.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((r.diagonal() - c.ptm().diagonal()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("three qubits is unsupported") {
    CHECK_THROWS(pauli_twirl(identity_channel(3)));
  }
}

TEST_CASE("noise boosting by folding") {
  SUBCASE("fold schedule") {
    FoldMix one = fold_mix(1.0);
    CHECK(one.k_low == 0);
    CHECK(one.w_high == 0.0);
    FoldMix three = fold_mix(3.0);
    CHECK(three.k_low == 1);
    CHECK(three.w_high == 0.0);
    FoldMix two = fold_mix(2.0);
    CHECK(two.k_low == 0);
    CHECK(two.k_high == 1);
    CHECK(two.w_high == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS(fold_mix(0.99));
  }
  NoiseModel noise;
  const double p = 0.01;
  noise.two_qubit = depolarizing_channel(p, 2);
  ParametrisedCircuit c(2);
  c.h(0).cnot(0, 1);
  SUBCASE("alpha = 1 leaves the circuit alone") {
    ParametrisedCircuit f = fold_circuit(c, noise, 0);
    CHECK(f.size() == c.size());
    CMatrix rho = QuantumState::zero(2).density();
    CHECK(oracle::max_abs(run_boosted_circuit(c, RVector(0), noise, 1.0, rho) -
                          run_noisy_circuit(c, RVector(0), noise, rho)) < 1e-15);
    CHECK(fold_circuit(c, noise, 2).size() == 1 + 5);  // the noiseless h is not folded
  }
  SUBCASE("alpha = 3 on a CNOT under commuting depolarizing noise") {
    // Three noisy CNOTs: each step shrinks the traceless part by (1 - p).
    const double expect = 1 - std::pow(1 - p, 3);
    CHECK(expect == doctest::Approx(0.029701).epsilon(1e-12));
    const GateOp& cnot = c.gates()[1];
    QuantumChannel err = boosted_error_channel(cnot, RVector(0), noise, 3.0);
    CHECK(std::abs(effective_depolarizing_rate(err) - expect) < 1e-12);
    // Dense channel product: D o CNOT o D o CNOT o D o CNOT, then undo CNOT.
    Rng rng(16);
    CMatrix rho = random_density(2, 4, rng);
    auto dep = [&](const oracle::Mat& r) { return ((1 - p) * r + p * oracle::identity(2) / 4.0).eval(); };
    oracle::Mat x = rho;
    for (int i = 0; i < 3; ++i) x = dep(oracle::cnot() * x * oracle::cnot());
    x = oracle::cnot() * x * oracle::cnot();
    CHECK(oracle::max_abs(err.apply(rho) - x) < 1e-14);
    CHECK(realised_boost_factor(cnot, RVector(0), noise, 3.0) == doctest::Approx(expect / p).epsilon(1e-12));
  }
  SUBCASE("alpha = 2 mixes one and three folds equally") {
    const GateOp& cnot = c.gates()[1];
    const double expect = 0.5 * (1.0 + (1 - std::pow(1 - p, 3)) / p);
    CHECK(realised_boost_factor(cnot, RVector(0), noise, 2.0) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::abs(expect - 2.0) < 3 * p);

    // The exact mixture equals the average of the two folded programs.
    CMatrix rho = QuantumState::zero(2).density();
    CMatrix mixed = run_boosted_circuit(c, RVector(0), noise, 2.0, rho);
    CMatrix avg = 0.5 * run_noisy_circuit(fold_circuit(c, noise, 0), RVector(0), noise, rho) +
                  0.5 * run_noisy_circuit(fold_circuit(c, noise, 1), RVector(0), noise, rho);
    CHECK(oracle::max_abs(mixed - avg) < 1e-15);

    Rng rng(17);
    int high = 0;
    const int draws = 4000;
    for (int i = 0; i < draws; ++i) high += sample_folded_circuit(c, noise, 2.0, rng).size() == 4 ? 1 : 0;
    CHECK(std::abs(high / double(draws) - 0.5) < 3 * std::sqrt(0.25 / draws));
  }
  SUBCASE("non-commuting noise reports the realised factor") {
    NoiseModel ad;
    ad.one_qubit = amplitude_damping_channel(0.02);
    ParametrisedCircuit h(1);
    h.h(0);
    const double f = realised_boost_factor(h.gates()[0], RVector(0), ad, 3.0);
    CHECK(std::isfinite(f));
    CHECK(f > 1.0);
  }
}

TEST_CASE("continuous noise with per-qubit reduction") {
  const double gamma = 0.4, tau = 0.25;
  NoiseModel noise;
  noise.continuous = ContinuousNoise{{std::sqrt(gamma) * sigma_minus()}, tau, 1e-3};
  ParametrisedCircuit c(2);
  c.x(0).x(1);
  const CMatrix rho0 = QuantumState::zero(2).density();

  SUBCASE("h = 1 decays each qubit at rate 2 gamma per gate duration") {
    CMatrix out = run_noisy_circuit(c, RVector(0), noise, rho0);
    // Qubit 0 sees two idle periods, qubit 1 one.
    CMatrix p0 = partial_trace(out, 2, {0});
    CMatrix p1 = partial_trace(out, 2, {1});
    CHECK(std::abs(p0(1, 1).real() - std::exp(-2 * gamma * 2 * tau)) < 1e-10);
    CHECK(std::abs(p1(1, 1).real() - std::exp(-2 * gamma * tau)) < 1e-10);
  }
  SUBCASE("a divisor h scales the rate by 1/h") {
    noise.reduction = {2.0, 5.0};
    CMatrix out = run_noisy_circuit(c, RVector(0), noise, rho0);
    CHECK(std::abs(partial_trace(out, 2, {0})(1, 1).real() - std::exp(-2 * gamma * 2 * tau / 2.0)) < 1e-10);
    CHECK(std::abs(partial_trace(out, 2, {1})(1, 1).real() - std::exp(-2 * gamma * tau / 5.0)) < 1e-10);
  }
  SUBCASE("h = infinity removes that qubit's noise") {
    noise.reduction = {std::numeric_limits<double>::infinity(), 1.0};
    CMatrix out = run_noisy_circuit(c, RVector(0), noise, rho0);
    CHECK(std::abs(partial_trace(out, 2, {0})(1, 1).real() - 1.0) < 1e-14);
    noise.reduction = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    CHECK(oracle::max_abs(run_noisy_circuit(c, RVector(0), noise, rho0) - apply_circuit(c, RVector(0), rho0)) < 1e-14);
  }
  SUBCASE("divisors below one are rejected") {
    noise.reduction = {0.5, 1.0};
    CHECK_THROWS(run_noisy_circuit(c, RVector(0), noise, rho0));
    noise.reduction = {1.0};
    CHECK_THROWS(run_noisy_circuit(c, RVector(0), noise, rho0));
  }
}
