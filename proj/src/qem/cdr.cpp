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


#include "nisq/qem/cdr.hpp"

#include <cmath>
#include <stdexcept>

#include "nisq/core/simulator.hpp"

namespace nisq {

ParametrisedCircuit cliffordise(const ParametrisedCircuit& circuit, const RVector& theta, Rng* rng,
                                double keep_fraction) {
  circuit.check_params(theta);
  if (!(keep_fraction >= 0.0 && keep_fraction < 1.0)) throw std::invalid_argument("cliffordise: keep_fraction must lie in [0, 1)");
  const double quarter = M_PI / 4.0;
  ParametrisedCircuit out(circuit.qubits(), circuit.num_params());
  if (circuit.has_reference()) out.set_reference(circuit.reference());
  for (GateOp g : circuit.gates()) {
    if (g.kind == GateKind::Rotation) {
      const double x = g.angle(theta) / quarter;
      double k = std::round(x);
      if (rng && keep_fraction > 0.0 && rng->uniform() < keep_fraction) {
        k = x;
      } else if (rng) {
        const double lo = std::floor(x);
        k = rng->uniform() < x - lo ? lo + 1.0 : lo;
      }
      g.slot = -1;
      g.offset = k * quarter;
    }
    out.add(g);
  }
  return out;
}

CdrResult clifford_data_regression(const ParametrisedCircuit& circuit, const RVector& theta, const NoiseModel& noise,
                                   const PauliSum& observable, const CdrConfig& config) {
  if (config.training < 2) throw std::invalid_argument("clifford_data_regression: need at least two training circuits");
  observable.require_hermitian("clifford_data_regression");
  const CVector ref = circuit.reference();
  const CMatrix rho0 = ref * ref.adjoint();
  const RVector none = RVector::Zero(circuit.num_params());

  CdrResult out;
  Rng rng(config.seed);
  for (int i = 0; i < config.training; ++i) {
    const ParametrisedCircuit c = cliffordise(circuit, theta, &rng, config.keep_fraction);
    out.ideal.push_back(expectation(prepare(c, none), observable));
    out.noisy.push_back(expectation(run_noisy_circuit(c, none, noise, rho0), observable));
  }
  const auto m = static_cast<Eigen::Index>(out.noisy.size());
  const RVector x = Eigen::Map<const RVector>(out.noisy.data(), m);
  const RVector y = Eigen::Map<const RVector>(out.ideal.data(), m);
  const double xm = x.mean(), ym = y.mean();
  const double sxx = (x.array() - xm).square().sum();
  if (sxx <= 1e-24 * std::max(1.0, x.squaredNorm()))
    throw std::invalid_argument("clifford_data_regression: degenerate training set, all noisy values equal");
  out.slope = ((x.array() - xm) * (y.array() - ym)).sum() / sxx;
  out.intercept = ym - out.slope * xm;

  const double raw = expectation(run_noisy_circuit(circuit, theta, noise, rho0), observable);
  MitigatedEstimate& e = out.estimate;
  e.method = "cdr";
  e.inputs = {raw};
  e.value = out.slope * raw + out.intercept;
  e.gamma = out.slope * out.slope;
  e.fit_residual = (out.slope * x.array() + out.intercept - y.array()).matrix().norm();
  return out;
}

}  // namespace nisq
