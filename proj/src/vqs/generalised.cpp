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

#include "nisq/vqs/generalised.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "nisq/core/simulator.hpp"

namespace nisq {

namespace {

constexpr double kMinInverseCondition = 1e-12;

void check_conditioning(const CMatrix& a, double t, const char* what) {
  const double ic = inverse_condition(a);
  if (ic < kMinInverseCondition) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "generalised evolution: %s is singular at t=%.6g (inverse condition %.3g)", what, t, ic);
    throw ConditioningError(buf);
  }
}

}  // namespace

GeneralisedTrace evolve_generalised(const GeneralisedSpec& spec, const ParametrisedCircuit& circuit,
                                    const RVector& theta0, double log_norm0, double t_final, double dt,
                                    const EvolveConfig& config) {
  if (!spec.a) throw std::invalid_argument("evolve_generalised: A(t) missing");
  circuit.check_params(theta0);
  const int steps = step_count(t_final, dt);
  const double h = steps > 0 ? t_final / steps : 0.0;
  const int n = circuit.qubits();
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  const Eigen::Index p = theta0.size();

  GeneralisedTrace out;
  out.trace.dt = h;
  RVector theta = theta0;
  double lambda = log_norm0;
  for (int i = 0; i <= steps; ++i) {
    const double t = i * h;
    const PauliSum a = spec.a(t);
    if (a.qubits() != n) throw std::invalid_argument("evolve_generalised: A(t) register mismatch");
    check_conditioning(a.matrix(), t, "A(t)");

    const double alpha = std::exp(lambda);
    const CVector psi = prepare(circuit, theta);
    const CVector u = alpha * psi;
    const std::vector<CVector> dpsi = derivative_states(circuit, theta);
    CMatrix v(d, p + 1);
    v.col(0) = a.apply(u);
    for (Eigen::Index k = 0; k < p; ++k) v.col(k + 1) = alpha * a.apply(dpsi[static_cast<std::size_t>(k)]);
    CVector du = CVector::Zero(d);
    for (const auto& drive : spec.drives) {
      const PauliSum b = drive.b(t);
      if (b.qubits() != n) throw std::invalid_argument("evolve_generalised: drive register mismatch");
      if (drive.reference && drive.reference->size() != d)
        throw std::invalid_argument("evolve_generalised: drive reference dimension mismatch");
      du += b.apply(drive.reference ? *drive.reference : u);
    }
    const RMatrix mbar = (v.adjoint() * v).real();
    const RVector vbar = (v.adjoint() * du).real();
    const RVector xd = pinv_solve(mbar, vbar, config.pinv_cutoff);
    if (!all_finite(xd)) throw std::runtime_error("evolve_generalised: non-finite velocity");
    const double res = xd.dot(mbar * xd) - 2.0 * vbar.dot(xd) + du.squaredNorm();

    out.trace.times.push_back(t);
    out.trace.params.push_back(theta);
    out.trace.residuals.push_back(res);
    out.trace.energies.push_back(0.0);
    out.log_norm.push_back(lambda);
    if (res > config.residual_budget) {
      out.trace.flagged_steps.push_back(i);
      if (!out.trace.flagged) {
        out.trace.flagged = true;
        out.trace.flag = "step " + std::to_string(i) + ": McLachlan residual exceeds budget";
      }
    }
    if (i < steps) {
      lambda += h * xd(0);
      theta += h * xd.tail(p);
    }
  }
  return out;
}

namespace {

EvolutionOutput finish(const ParametrisedCircuit& circuit, GeneralisedTrace tr) {
  EvolutionOutput out;
  out.params = tr.trace.final_params();
  out.state = prepare(circuit, out.params);
  out.norm = std::exp(tr.log_norm.back());
  out.trace = std::move(tr);
  return out;
}

void check_operator(const PauliSum& m, const ParametrisedCircuit& circuit, double t_final) {
  if (m.qubits() != circuit.qubits()) throw std::invalid_argument("evolution: M and circuit registers differ");
  if (!(t_final > 0.0)) throw std::invalid_argument("evolution: T must be positive");
}

}  // namespace

EvolutionOutput multiply_by_evolution(const PauliSum& m, const ParametrisedCircuit& circuit, const RVector& theta0,
                                      double t_final, double dt, const EvolveConfig& config) {
  check_operator(m, circuit, t_final);
  const int n = circuit.qubits();
  const CVector u0 = prepare(circuit, theta0);
  if (m.apply(u0).norm() < 1e-12) throw std::invalid_argument("multiply_by_evolution: M|u0> = 0");
  const PauliSum drift = (m - PauliSum::identity(n)) * Complex(1.0 / t_final);
  GeneralisedSpec spec;
  spec.a = [n](double) { return PauliSum::identity(n); };
  spec.drives.push_back({[drift](double) { return drift; }, u0});
  return finish(circuit, evolve_generalised(spec, circuit, theta0, 0.0, t_final, dt, config));
}

EvolutionOutput solve_by_evolution(const PauliSum& m, const ParametrisedCircuit& circuit, const RVector& theta0,
                                   double t_final, double dt, const EvolveConfig& config) {
  check_operator(m, circuit, t_final);
  const int n = circuit.qubits();
  const PauliSum id = PauliSum::identity(n);
  const PauliSum drift = (m - id) * Complex(1.0 / t_final);
  GeneralisedSpec spec;
  spec.a = [=](double t) { return (m * Complex(t / t_final) + id * Complex(1.0 - t / t_final)).simplified(); };
  spec.drives.push_back({[drift](double) { return drift * Complex(-1.0); }, std::nullopt});
  // C(s) = I + s (M - I) is singular exactly when M has a real eigenvalue
  // m <= 0, at s = 1 / (1 - m); reject before stepping.
  const CMatrix mm = m.matrix();
  Eigen::ComplexEigenSolver<CMatrix> es(mm, false);
  const double scale = std::max(1.0, mm.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const Complex ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) <= 1e-12 * scale && ev.real() <= 1e-12 * scale) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "solve_by_evolution: C(t) is singular at t=%.6g (M has eigenvalue %.6g)",
                    t_final / (1.0 - std::min(ev.real(), 0.0)), ev.real());
      throw ConditioningError(buf);
    }
  }
  return finish(circuit, evolve_generalised(spec, circuit, theta0, 0.0, t_final, dt, config));
}

}  // namespace nisq
