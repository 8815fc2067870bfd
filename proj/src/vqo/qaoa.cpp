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

#include "nisq/vqo/qaoa.hpp"

#include <cmath>
#include <stdexcept>

#include "nisq/core/random.hpp"
#include "nisq/core/simulator.hpp"
#include "nisq/vqo/cost.hpp"
#include "nisq/vqo/vqe.hpp"

namespace nisq {

PauliSum mixer_hamiltonian(int n) {
  PauliSum h(n);
  for (int q = 0; q < n; ++q) h.add(1.0, PauliString::single(n, q, 'X'));
  return h;
}

ParametrisedCircuit qaoa_circuit(const PauliSum& problem, int depth) {
  if (depth < 1) throw std::invalid_argument("qaoa: depth must be at least 1");
  problem.require_hermitian("qaoa");
  const int n = problem.qubits();
  const auto terms = problem.simplified().real_terms();
  for (const auto& [c, p] : terms)
    if (p.x_mask() != 0) throw std::invalid_argument("qaoa: problem Hamiltonian must be diagonal");
  ParametrisedCircuit circ(n, 2 * depth);
  CVector minus = CVector::Ones(static_cast<Eigen::Index>(dim_of(n)));
  for (std::size_t b = 0; b < dim_of(n); ++b)
    if (__builtin_popcountll(b) % 2) minus(static_cast<Eigen::Index>(b)) = -1.0;
  circ.set_reference(minus / std::sqrt(double(dim_of(n))));
  for (int l = 0; l < depth; ++l) {
    // Diagonal terms commute, so exp(-i t H_P) is exact as a product.
    for (const auto& [c, p] : terms)
      if (!p.is_identity_letters()) circ.rotation(p.without_phase(), 2 * l, p.phase_power() == 2 ? -c : c);
    for (int q = 0; q < n; ++q) circ.rotation(PauliString::single(n, q, 'X'), 2 * l + 1, 1.0);
  }
  return circ;
}

QaoaResult qaoa(const PauliSum& problem, const QaoaConfig& config, std::uint64_t seed) {
  if (config.depth < 1) throw std::invalid_argument("qaoa: depth must be at least 1");
  const ParametrisedCircuit circ = qaoa_circuit(problem, config.depth);
  const int n = problem.qubits();
  const CostFunction target = CostFunction::expectation(problem);

  Rng rng(seed);
  RVector start(circ.num_params());
  for (Eigen::Index i = 0; i < start.size(); ++i) start(i) = 0.2 * rng.uniform() - 0.1;

  QaoaResult out;
  VqeResult r;
  if (config.schedule == QaoaSchedule::Fixed) {
    r = minimise(target, circ, config.optimizer, derive_seed(seed, 1), start);
    out.trace = r.trace;
  } else {
    if (config.morph_steps < 1) throw std::invalid_argument("qaoa: morph_steps must be at least 1");
    OptimizerConfig warm = config.optimizer;
    warm.restarts = 0;
    RVector x = start;
    const PauliSum hx = mixer_hamiltonian(n);
    for (int s = 1; s <= config.morph_steps; ++s) {
      const double t = double(s) / config.morph_steps;
      PauliSum hs = (1.0 - t) * hx + t * problem;
      r = minimise(CostFunction::expectation(hs.simplified()), circ, warm, derive_seed(seed, std::uint64_t(s) + 1), x);
      x = r.params;
      out.trace.push_back(r.energy);
      if (r.flagged && !out.flagged) {
        out.flagged = true;
        out.flag = "morphing step s=" + std::to_string(t) + ": " + r.flag;
      }
    }
  }
  out.params = r.params;
  out.energy = target.evaluate(prepare(circ, r.params));
  if (config.schedule == QaoaSchedule::Fixed && r.flagged) {
    out.flagged = true;
    out.flag = r.flag;
  }
  const CVector psi = prepare(circ, r.params);
  out.probabilities = psi.cwiseAbs2();
  Eigen::Index best = 0;
  out.best_probability = out.probabilities.maxCoeff(&best);
  out.best_basis = static_cast<std::uint64_t>(best);
  return out;
}

}  // namespace nisq
