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


// Acceptance run: one PASS/FAIL line per criterion. Reference values come
// from the brute-force helpers in tests/support/oracle.hpp or closed forms.
//
//   acceptance <path-to-nisqlab> <configs-dir> <scratch-dir>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nisq/core/circuit.hpp"
#include "nisq/core/hamiltonian.hpp"
#include "nisq/core/random.hpp"
#include "nisq/core/simulator.hpp"
#include "nisq/noise/channel.hpp"
#include "nisq/noise/lindblad.hpp"
#include "nisq/noise/noise_model.hpp"
#include "nisq/noise/trajectory.hpp"
#include "nisq/qem/extrapolation.hpp"
#include "nisq/qem/individual.hpp"
#include "nisq/qem/measurement.hpp"
#include "nisq/qem/quasi_probability.hpp"
#include "nisq/qem/symmetry.hpp"
#include "nisq/vqo/linear_algebra.hpp"
#include "nisq/vqo/qaoa.hpp"
#include "nisq/vqo/sat.hpp"
#include "nisq/vqo/vqe.hpp"
#include "nisq/vqs/evolve.hpp"
#include "nisq/vqs/gibbs.hpp"
#include "nisq/vqs/mclachlan.hpp"
#include "oracle.hpp"

using namespace nisq;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string format(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Open-chain transverse Ising built letter by letter.
oracle::Mat ising_oracle(int n, double h, double lambda) {
  std::vector<std::pair<oracle::C, std::string>> terms;
  for (int i = 0; i + 1 < n; ++i) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i) + 1] = 'Z';
    terms.push_back({h, s});
  }
  for (int i = 0; i < n; ++i) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[static_cast<std::size_t>(i)] = 'X';
    terms.push_back({lambda, s});
  }
  return oracle::sum(terms);
}

double poly(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

// --- 1 ---------------------------------------------------------------------
Outcome vqe_bound() {
  constexpr double kBelow = 1e-9, kAbove = 1e-4, kSeconds = 60.0;
  Outcome o{true, ""};
  for (int n = 2; n <= 4; ++n) {
    const double eg = oracle::spectrum(ising_oracle(n, 1.0, 0.5))(0);
    OptimizerConfig cfg;
    cfg.tolerance = 1e-12;
    cfg.max_iters = 20000;
    cfg.restarts = 3;
    const auto t0 = std::chrono::steady_clock::now();
    const VqeResult r = vqe(transverse_ising(n, 1.0, 0.5), hardware_efficient_ansatz(n, 3), cfg, 100 + n);
    const double dt = seconds_since(t0);
    const bool ok = r.energy >= eg - kBelow && r.energy <= eg + kAbove && dt < kSeconds;
    o.pass = o.pass && ok;
    o.detail += format("n=%d E-E_G=%.2e t=%.1fs; ", n, r.energy - eg, dt);
  }
  o.detail += format("need -%.0e <= E-E_G <= %.0e, < %.0f s", kBelow, kAbove, kSeconds);
  return o;
}

// --- 2 ---------------------------------------------------------------------
Outcome mclachlan_fidelity() {
  constexpr double kFidelity = 1 - 1e-6, kRate = 1e-6;
  Rng rng(32);
  Outcome o{true, ""};
  for (int n : {2, 3}) {
    PauliSum h(n);
    ParametrisedCircuit c(n);
    std::vector<std::string> labels;
    for (int q = 0; q < n; ++q) {
      std::string s(static_cast<std::size_t>(n), 'I');
      s[static_cast<std::size_t>(q)] = 'X';
      labels.push_back(s);
    }
    labels.push_back(std::string(static_cast<std::size_t>(n), 'X'));
    // Every label commutes with every other, so the ansatz follows e^{-iHt} exactly.
    for (const auto& s : labels) {
      h.add(rng.normal(), PauliString::parse(s));
      c.rotation(PauliString::parse(s), c.add_parameters(), 0.5);
    }
    const CVector psi0 = random_state(n, rng);
    c.set_reference(psi0);
    const EvolutionTrace tr = evolve(c, RVector::Zero(c.num_params()), h, EvolutionMode::Real, 1.0, 1e-3);
    const oracle::Vec exact = oracle::expm(oracle::C(0, -1) * oracle::Mat(h.matrix())) * psi0;
    const double f = std::norm(exact.dot(prepare(c, tr.final_params())));
    o.pass = o.pass && f >= kFidelity;
    o.detail += format("n=%d 1-F=%.2e; ", n, 1 - f);
  }
  ParametrisedCircuit rx(1, 1);
  rx.rx(0, 0);
  double worst = 0.0;
  for (double th : {-2.0, -0.3, 0.0, 0.9, 2.5}) {
    const McLachlanSystem s = assemble_mclachlan(rx, RVector::Constant(1, th), PauliSum::parse("1 0 X\n"), EvolutionMode::Real);
    worst = std::max(worst, std::abs(mclachlan_velocity(s, 1e-8)(0) - 2.0));
  }
  o.pass = o.pass && worst <= kRate;
  o.detail += format("Rx/X |theta_dot-2|=%.1e; need 1-F <= 1e-6, |theta_dot-2| <= 1e-6", worst);
  return o;
}

// --- 3 ---------------------------------------------------------------------
Outcome imaginary_time() {
  constexpr double kEnergy = 1e-4, kMonotone = 1e-12;
  constexpr int kStarts = 20, kNeeded = 18;
  const double eg = oracle::spectrum(ising_oracle(2, 1.0, 0.5))(0);
  const PauliSum h = transverse_ising(2, 1.0, 0.5);
  const ParametrisedCircuit c = hardware_efficient_ansatz(2, 2);
  int hits = 0, rises = 0;
  for (int trial = 0; trial < kStarts; ++trial) {
    const EvolutionTrace tr =
        evolve(c, random_parameters(c.num_params(), derive_seed(33, std::uint64_t(trial))), h, EvolutionMode::Imaginary, 15.0, 1e-2);
    for (std::size_t i = 1; i < tr.energies.size(); ++i)
      if (tr.energies[i] > tr.energies[i - 1] + kMonotone) ++rises;
    if (std::abs(tr.energies.back() - eg) < kEnergy) ++hits;
  }
  return {hits >= kNeeded && rises == 0,
          format("%d/%d within 1e-4 of E_G, %d energy rises; need >= %d and 0", hits, kStarts, rises, kNeeded)};
}

// --- 4 ---------------------------------------------------------------------
Outcome gibbs() {
  constexpr double kTol = 1e-3;
  const GibbsResult r = prepare_gibbs(PauliSum::parse("1 0 Z\n"), gibbs_ansatz(1), 0.5, 1e-3);
  const double z = std::exp(-1.0) + std::exp(1.0);
  const double want0 = std::exp(-1.0) / z, want1 = std::exp(1.0) / z;
  const double p0 = r.rho(0, 0).real(), p1 = r.rho(1, 1).real();
  const double err = std::max({std::abs(p0 - want0), std::abs(p1 - want1), std::abs(p0 - 0.1192), std::abs(p1 - 0.8808)});
  return {err <= kTol, format("populations (%.5f, %.5f) vs (0.1192, 0.8808), max err %.1e; need <= 1e-3", p0, p1, err)};
}

// --- 5 ---------------------------------------------------------------------
Outcome richardson_exactness() {
  constexpr double kValue = 1e-10, kGamma = 1e-12, kConstraint = 1e-12;
  Rng rng(41);
  double worst_v = 0.0, worst_g = 0.0, worst_c = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + int(rng.index(4));
    std::vector<double> coeff(static_cast<std::size_t>(n + 1));
    for (double& x : coeff) x = rng.normal();
    std::vector<double> alphas = {1.0};
    for (int k = 0; k < n; ++k) alphas.push_back(alphas.back() + 0.5 + rng.uniform());
    const double eps = 0.01 + 0.1 * rng.uniform();
    std::vector<DataPoint> pts;
    for (double a : alphas) pts.push_back({a, poly(coeff, a * eps), 0.0});
    const MitigatedEstimate e = richardson(pts);
    const RVector beta = richardson_coefficients(alphas);
    worst_v = std::max(worst_v, std::abs(e.value - coeff[0]));
    worst_g = std::max(worst_g, std::abs(e.gamma - beta.squaredNorm()));
    // Residuals summed in extended precision so the check's own rounding
    // (terms reach ~1e4 for alpha^4) does not mask the coefficients' error.
    for (int j = 0; j <= n; ++j) {
      long double s = j == 0 ? -1.0L : 0.0L;
      for (std::size_t k = 0; k < alphas.size(); ++k)
        s += static_cast<long double>(beta(Eigen::Index(k))) * std::pow(static_cast<long double>(alphas[k]), j);
      worst_c = std::max(worst_c, static_cast<double>(std::fabs(s)));
    }
  }
  return {worst_v < kValue && worst_g <= kGamma && worst_c < kConstraint,
          format("500 polynomials: value err %.1e, gamma err %.1e, constraint residual %.1e", worst_v, worst_g, worst_c)};
}

// --- 6 ---------------------------------------------------------------------
Outcome roundtrips() {
  constexpr double kTol = 1e-12;
  Rng rng(60);
  double worst_exp = 0.0, worst_hyp = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double m0 = 2 * rng.uniform() - 1;
    const double gd = rng.uniform();
    // <M>(mu) = <M>(0) e^{-Gamma_d mu} with mu = N eps; two rates eps and alpha eps.
    const double n_gates = 1 + 40 * rng.uniform(), eps = 0.002 + 0.02 * rng.uniform(), alpha = 1.5 + 2 * rng.uniform();
    auto m = [&](double e) { return m0 * std::exp(-gd * n_gates * e); };
    const MitigatedEstimate ex = exponential_extrapolate({eps, m(eps), 0.0}, {alpha * eps, m(alpha * eps), 0.0}, alpha, gd * n_gates);
    worst_exp = std::max(worst_exp, std::abs(ex.value - m0));
    // Sector values for the per-error decay (1 - Gamma_d)^k.
    const double mu = 0.05 + 2 * rng.uniform();
    const double me = std::cosh((1 - gd) * mu) / std::cosh(mu) * m0;
    const double mo = std::sinh((1 - gd) * mu) / std::sinh(mu) * m0;
    const MitigatedEstimate hy = hyperbolic_extrapolate(me, mo, mu);
    worst_hyp = std::max(worst_hyp, hy.flagged ? INFINITY : std::abs(hy.value - m0));
  }
  return {worst_exp <= kTol && worst_hyp <= kTol,
          format("200 instances: exponential err %.1e, hyperbolic err %.1e; need <= 1e-12", worst_exp, worst_hyp)};
}

// --- 7 ---------------------------------------------------------------------
double noiseless_oracle(const oracle::Mat& u, const oracle::Vec& ref, const PauliSum& obs) {
  const oracle::Vec psi = u * ref;
  return (psi.adjoint() * oracle::Mat(obs.matrix()) * psi)(0, 0).real();
}

Outcome quasi_probability() {
  constexpr double kExact = 1e-10, kSigmas = 3.0, kCost = 1e-12;
  const PauliSum obs = PauliSum::parse("0.7 0 ZI\n0.4 0 XX\n-0.3 0 IY\n");
  const oracle::C mi(0, -1);
  Rng rng(70);
  double worst = 0.0;
  // Ry(theta) on 0, CNOT, exp(-i 0.3 theta Z) on 1 under mixed non-Pauli noise.
  ParametrisedCircuit c(2, 1);
  c.ry(0, 0).cnot(0, 1).rz(1, 0, 0.3);
  NoiseModel noise;
  noise.one_qubit = amplitude_damping_channel(0.07).then(dephasing_channel(0.03));
  noise.two_qubit = depolarizing_channel(0.04, 2).then(amplitude_damping_channel(0.05).tensor(identity_channel(1)));
  const GateDecompositions d = decompose_circuit_noise(c, noise, standard_basis(1));
  for (int trial = 0; trial < 5; ++trial) {
    const double th = 2 * M_PI * rng.uniform();
    const oracle::Mat u = oracle::on(2, 1, oracle::expm(mi * 0.3 * th * oracle::pauli('Z'))) * oracle::cnot() *
                          oracle::on(2, 0, oracle::expm(mi * 0.5 * th * oracle::pauli('Y')));
    const MitigatedEstimate ex = quasi_probability_exact(c, RVector::Constant(1, th), noise, obs, d);
    worst = std::max(worst, std::abs(ex.value - noiseless_oracle(u, oracle::ket("00"), obs)));
  }
  // Three one-qubit gates under depolarizing noise, sampled.
  ParametrisedCircuit s(2, 2);
  s.h(0).ry(1, 0).rx(0, 1);
  RVector th(2);
  th << 0.9, -0.4;
  NoiseModel dep;
  dep.one_qubit = depolarizing_channel(0.05);
  const GateDecompositions ds = decompose_circuit_noise(s, dep, standard_basis(1));
  const oracle::Mat us = oracle::on(2, 0, oracle::expm(mi * 0.5 * th(1) * oracle::pauli('X'))) *
                         oracle::on(2, 1, oracle::expm(mi * 0.5 * th(0) * oracle::pauli('Y'))) *
                         oracle::on(2, 0, oracle::single('H'));
  const double ideal = noiseless_oracle(us, oracle::ket("00"), obs);
  worst = std::max(worst, std::abs(quasi_probability_exact(s, th, dep, obs, ds).value - ideal));
  QuasiProbabilitySettings qs;
  qs.shots = 100000;
  qs.seed = 7;
  const MitigatedEstimate mc = quasi_probability_estimate(s, th, dep, obs, ds, qs);
  const double z = std::abs(mc.value - ideal) / mc.std_error;
  const double cost = invert_channel(depolarizing_channel(0.1), standard_basis(1)).cost();
  const double cost_err = std::max(std::abs(cost - 7.0 / 6.0), std::abs(depolarizing_inverse_cost(0.1) - 7.0 / 6.0));
  return {worst <= kExact && z <= kSigmas && cost_err <= kCost,
          format("enumeration err %.1e, MC |dev|/sigma = %.2f at 1e5 shots, C_D(0.1) err %.1e", worst, z, cost_err)};
}

// --- 8 ---------------------------------------------------------------------
Outcome symmetry() {
  constexpr double kTol = 1e-10;
  Rng rng(45);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + int(rng.index(2));
    std::string s;
    do {
      s.clear();
      for (int q = 0; q < n; ++q) s += "IXYZ"[rng.index(4)];
    } while (s == std::string(static_cast<std::size_t>(n), 'I'));
    const SymmetryOperator sym{PauliString::parse(s), rng.uniform() < 0.5 ? 1 : -1};
    PauliSum hh(n);
    while (hh.size() < 4) {
      std::string t;
      for (int q = 0; q < n; ++q) t += "IXYZ"[rng.index(4)];
      const PauliString p = PauliString::parse(t);
      if (p.commutes_with(sym.pauli)) hh.add(rng.normal(), p);
    }
    const CMatrix rho = random_density(n, 1 + int(rng.index(3)), rng);
    const double post = symmetry_verify(rho, sym, hh, VerifyMode::Postprocess).estimate.value;
    const oracle::Mat proj = 0.5 * (oracle::identity(n) + double(sym.sector) * oracle::pauli(s));
    const oracle::Mat kept = proj * rho * proj;
    const double want = (oracle::Mat(hh.matrix()) * kept).trace().real() / kept.trace().real();
    worst = std::max(worst, std::abs(post - want));
  }
  return {worst <= kTol, format("100 instances, max |postprocess - projector| = %.1e; need <= 1e-10", worst)};
}

// --- 9 ---------------------------------------------------------------------
Outcome measurement() {
  constexpr double kTol = 1e-10, kSimplex = 1e-12;
  Rng rng(46);
  double worst = 0.0, off_simplex = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<RMatrix> blocks;
    for (int q = 0; q < 3; ++q) {
      const double e = 0.1 * rng.uniform(), f = 0.1 * rng.uniform();
      RMatrix m(2, 2);
      m << 1 - e, f, e, 1 - f;
      blocks.push_back(m);
    }
    const ConfusionMatrix c = ConfusionMatrix::from_qubits(blocks);
    // Forward confusion written out as a Kronecker product.
    RMatrix full = blocks[0];
    for (std::size_t q = 1; q < blocks.size(); ++q) full = Eigen::kroneckerProduct(full, blocks[q]).eval();
    RVector p(8);
    for (int i = 0; i < 8; ++i) p(i) = rng.uniform();
    p /= p.sum();
    worst = std::max(worst, (mitigate_measurement(full * p, c) - p).cwiseAbs().maxCoeff());
  }
  for (int trial = 0; trial < 500; ++trial) {
    RMatrix b(2, 2);
    const double e = 0.45 * rng.uniform(), f = 0.45 * rng.uniform();
    b << 1 - e, f, e, 1 - f;
    const ConfusionMatrix c = ConfusionMatrix::from_qubits({b, b});
    RVector p(4);
    for (int i = 0; i < 4; ++i) p(i) = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
    if (p.sum() == 0.0) p(0) = 1.0;
    p /= p.sum();
    const RVector out = mitigate_measurement(p, c);
    off_simplex = std::max({off_simplex, -out.minCoeff(), std::abs(out.sum() - 1.0)});
  }
  return {worst <= kTol && off_simplex <= kSimplex,
          format("inversion err %.1e over 100 instances; simplex violation %.1e over 500; need <= 1e-10, 1e-12", worst,
                 off_simplex)};
}

// --- 10 --------------------------------------------------------------------
Outcome trajectories() {
  constexpr double kSigmas = 3.0;
  constexpr std::size_t kCount = 10000;
  const double gamma = 0.5, dt = 1e-3;
  LindbladSystem sys(PauliSum(1), {std::sqrt(gamma) * sigma_minus()});
  const TrajectoryEnsemble ens = sse_ensemble(sys, oracle::ket("1"), 1.0, dt, kCount, 99, 1);
  double worst = 0.0;
  std::string pts;
  for (double t : {0.2, 0.4, 0.6, 0.8, 1.0}) {
    const auto s = static_cast<std::size_t>(std::lround(t / dt));
    const double exact = std::exp(-2 * gamma * ens.times[s]);
    const double sigma = std::sqrt(ens.population_variance[s](1) / double(kCount));
    const double z = std::abs(ens.mean[s](1, 1).real() - exact) / sigma;
    worst = std::max(worst, z);
    pts += format("%.2f ", z);
  }
  return {worst <= kSigmas, format("|rho11 - e^{-2 gamma t}|/sigma at t=0.2..1.0: %sneed <= 3", pts.c_str())};
}

// --- 11 --------------------------------------------------------------------
Outcome individual_reduction() {
  constexpr double kSlope = 2.0, kTol = 0.3;
  const ParametrisedCircuit c = hardware_efficient_ansatz(2, 1);
  const RVector th = random_parameters(c.num_params(), 9);
  const PauliSum obs = PauliSum::parse("1 0 ZZ\n0.6 0 XI\n0.3 0 IY\n");
  const oracle::Vec psi = circuit_unitary(c, th) * c.reference();
  const double ideal = (psi.adjoint() * oracle::Mat(obs.matrix()) * psi)(0, 0).real();
  std::vector<double> xs, ys;
  for (double tau : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
    NoiseModel n;
    ContinuousNoise cn;
    cn.jumps = {std::sqrt(0.8) * sigma_minus(), std::sqrt(0.3) * oracle::pauli('Z')};
    cn.duration = tau;
    n.continuous = cn;
    const MitigatedEstimate e = individual_error_reduction(c, th, n, obs, {8.0, 8.0});
    xs.push_back(std::log(tau));
    ys.push_back(std::log(std::abs(e.value - ideal)));
  }
  const Eigen::Map<const RVector> x(xs.data(), 5), y(ys.data(), 5);
  const double slope = ((x.array() - x.mean()) * (y.array() - y.mean())).sum() / (x.array() - x.mean()).square().sum();
  return {std::abs(slope - kSlope) <= kTol, format("log-log slope %.3f; need 2.0 +- 0.3", slope)};
}

// --- 12 --------------------------------------------------------------------
Outcome qaoa_sat() {
  constexpr double kProbability = 0.9;
  const CnfFormula f = parse_dimacs("p cnf 2 3\n1 2 0\n-1 2 0\n-1 -2 0\n");
  QaoaConfig cfg;
  cfg.depth = 3;
  cfg.optimizer.tolerance = 1e-14;
  cfg.optimizer.max_iters = 20000;
  cfg.optimizer.restarts = 2;
  const QaoaResult r = qaoa(sat_to_hamiltonian(f), cfg, 5);
  Eigen::Index modal = 0;
  r.probabilities.maxCoeff(&modal);
  const std::vector<bool> a = assignment_of(std::uint64_t(modal), 2);
  const bool want = !a[0] && a[1];
  return {want && r.probabilities(modal) > kProbability,
          format("modal x1=%d x2=%d with p=%.6f; need x1=0 x2=1, p > 0.9", int(a[0]), int(a[1]), r.probabilities(modal))};
}

// --- 13 --------------------------------------------------------------------
Outcome local_cost() {
  constexpr double kSlack = 1e-12;
  Rng rng(26);
  int bad = 0;
  double min_gap_lo = INFINITY, min_gap_hi = INFINITY;
  for (int trial = 0; trial < 50; ++trial) {
    PauliSum m(3);
    for (int t = 0; t < 4; ++t) {
      std::string letters;
      for (int q = 0; q < 3; ++q) letters += "IXYZ"[rng.index(4)];
      m.add(rng.normal(), PauliString::parse(letters));
    }
    ParametrisedCircuit v0(3);
    v0.unitary("V", random_unitary(8, rng), {0, 1, 2});
    const CostFunction cg = linear_algebra_hamiltonian(m, v0, LinearTask::Solve, CostLocality::Global);
    const CostFunction cl = linear_algebra_hamiltonian(m, v0, LinearTask::Solve, CostLocality::Local);
    const CVector x = random_state(3, rng);
    const double g = cg.evaluate(x), l = cl.evaluate(x);
    min_gap_lo = std::min(min_gap_lo, g - l);
    min_gap_hi = std::min(min_gap_hi, 3 * l - g);
    if (l > g + kSlack || g > 3 * l + kSlack) ++bad;
  }
  return {bad == 0, format("50 instances, %d violations; min(C_G - C_L) = %.2e, min(3 C_L - C_G) = %.2e", bad, min_gap_lo,
                           min_gap_hi)};
}

// --- 14 --------------------------------------------------------------------
std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli_determinism(const std::string& binary, const std::string& configs, const std::string& scratch) {
  if (binary.empty() || configs.empty() || scratch.empty()) return {false, "nisqlab path, configs dir or scratch dir not given"};
  const std::vector<std::string> cases = {"ising_vqe_mitigated.yaml", "evolve_real.yaml", "qaoa_sat.yaml"};
  int compared = 0, differ = 0;
  for (const auto& cfg : cases) {
    std::vector<std::filesystem::path> dirs;
    for (const char* jobs : {"1", "3"}) {
      const std::filesystem::path dir = std::filesystem::path(scratch) / (cfg + "-" + jobs);
      std::filesystem::remove_all(dir);
      const std::string cmd = "\"" + binary + "\" run \"" + configs + "/" + cfg + "\" --seed 1234 --jobs " + jobs +
                              " --out \"" + dir.string() + "\" 2>/dev/null";
      const int rc = std::system(cmd.c_str());
      if (rc != 0) return {false, "nisqlab failed on " + cfg};
      dirs.push_back(dir);
    }
    for (const char* f : {"results.json", "trace.csv", "extrapolation.csv"}) {
      ++compared;
      if (slurp(dirs[0] / f) != slurp(dirs[1] / f) || slurp(dirs[0] / f).empty()) ++differ;
    }
  }
  return {differ == 0, format("%d output files compared across reruns, %d differ", compared, differ)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";
  const std::string configs = argc > 2 ? argv[2] : "";
  const std::string scratch = argc > 3 ? argv[3] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"VQE variational bound and accuracy", vqe_bound},
      {"McLachlan real-time fidelity", mclachlan_fidelity},
      {"imaginary-time convergence", imaginary_time},
      {"Gibbs preparation", gibbs},
      {"Richardson exactness", richardson_exactness},
      {"exponential/hyperbolic roundtrips", roundtrips},
      {"quasi-probability unbiasedness", quasi_probability},
      {"symmetry-verification equivalence", symmetry},
      {"measurement mitigation", measurement},
      {"trajectory/Lindblad agreement", trajectories},
      {"individual error reduction scaling", individual_reduction},
      {"QAOA/SAT modal assignment", qaoa_sat},
      {"local-cost inequality", local_cost},
      {"CLI determinism", [&] { return cli_determinism(binary, configs, scratch); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - std::size_t(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
