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
#include <random>
#include <vector>

#include "nisq/core/linalg.hpp"

namespace nisq {

// mt19937_64 with hand-rolled transforms. The standard distributions are
// implementation-defined, so they would break cross-platform determinism.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double normal();
  // Uniform integer in [0, n).
  std::size_t index(std::size_t n);
  // Index drawn from non-negative weights (need not be normalised).
  std::size_t discrete(const std::vector<double>& weights);

 private:
  std::mt19937_64 engine_;
};

// Independent stream seed for task `index` under a master seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Haar-random pure state.
CVector random_state(int n_qubits, Rng& rng);
// Random density matrix of the given rank (Ginibre construction).
CMatrix random_density(int n_qubits, int rank, Rng& rng);
// Haar-random unitary through QR of a Ginibre matrix.
CMatrix random_unitary(Eigen::Index dim, Rng& rng);

}  // namespace nisq
