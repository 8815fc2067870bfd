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

#include "nisq/vqs/evolve.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace nisq {

int step_count(double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("evolve: T must be finite and non-negative");
  return std::max(0, static_cast<int>(std::ceil(t / dt - 1e-9)));
}

RVector mclachlan_velocity(const McLachlanSystem& s, double cutoff) { return pinv_solve(s.m, s.rhs, cutoff); }

EvolutionTrace evolve(const ParametrisedCircuit& circuit, const RVector& theta0, const PauliSum& h, EvolutionMode mode,
                      double t_final, double dt, const EvolveConfig& config) {
  const int steps = step_count(t_final, dt);
  const double h_step = steps > 0 ? t_final / steps : 0.0;
  EvolutionTrace tr;
  tr.dt = h_step;
  RVector theta = theta0;
  auto note = [&](int step, const std::string& why) {
    tr.flagged_steps.push_back(step);
    if (!tr.flagged) {
      tr.flagged = true;
      tr.flag = why;
    }
  };
  for (int i = 0; i <= steps; ++i) {
    const McLachlanSystem s = assemble_mclachlan(circuit, theta, h, mode);
    const RVector td = mclachlan_velocity(s, config.pinv_cutoff);
    if (!all_finite(td)) throw std::runtime_error("evolve: non-finite parameter velocity");
    const double res = mclachlan_residual(s, td);
    tr.times.push_back(i * h_step);
    tr.params.push_back(theta);
    tr.residuals.push_back(res);
    tr.energies.push_back(s.energy);
    if (res > config.residual_budget)
      note(i, "step " + std::to_string(i) + ": McLachlan residual " + std::to_string(res) + " exceeds budget");
    if (mode == EvolutionMode::Imaginary && i > 0 && s.energy > tr.energies[static_cast<std::size_t>(i - 1)] + 1e-12)
      note(i, "step " + std::to_string(i) + ": imaginary-time energy increased; reduce dt");
    if (i < steps) theta += h_step * td;
  }
  return tr;
}

void write_trace_csv(std::ostream& out, const EvolutionTrace& tr) {
  out << "t";
  const Eigen::Index p = tr.params.empty() ? 0 : tr.params.front().size();
  for (Eigen::Index k = 0; k < p; ++k) out << ",theta_" << k;
  out << ",residual,energy\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    put(tr.times[i]);
    for (Eigen::Index k = 0; k < p; ++k) {
      out << ',';
      put(tr.params[i](k));
    }
    out << ',';
    put(tr.residuals[i]);
    out << ',';
    put(tr.energies[i]);
    out << '\n';
  }
}

}  // namespace nisq
