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

#pragma once

#include <cstdint>
#include <vector>

#include "nisq/core/linalg.hpp"
#include "nisq/noise/lindblad.hpp"

namespace nisq {

struct Jump {
  double time;
  int channel;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<CVector> states;
  std::vector<Jump> jumps;
};

// One quantum-jump unravelling of `system` from |psi0> over [0, t].
//
// The factor-2 master equation is unravelled with jump operators sqrt(2) L_k,
// so a jump through k happens with probability 2 <L_k^dagger L_k> dt per step.
// Between jumps the state follows the non-Hermitian drift (RK4) and is
// renormalised. Throws when dt times the largest total jump rate exceeds 0.1.
Trajectory sse_trajectory(const LindbladSystem& system, const CVector& psi0, double t, double dt,
                          std::uint64_t seed);

// Drift-only propagation (no jumps) over the same grid; the reference for
// trajectories with an empty jump record.
CVector sse_drift(const LindbladSystem& system, const CVector& psi0, double t, double dt);

struct TrajectoryEnsemble {
  std::vector<double> times;
  // Mean |psi><psi| at each grid time.
  std::vector<CMatrix> mean;
  // Sample variance of each basis population at each grid time.
  std::vector<RVector> population_variance;
  std::size_t count = 0;
};

// Average over `count` trajectories; trajectory i uses derive_seed(seed, i).
// Runs on up to `jobs` threads; the reduction order is fixed so the result
// does not depend on `jobs`.
TrajectoryEnsemble sse_ensemble(const LindbladSystem& system, const CVector& psi0, double t, double dt,
                                std::size_t count, std::uint64_t seed, unsigned jobs = 1);

}  // namespace nisq
