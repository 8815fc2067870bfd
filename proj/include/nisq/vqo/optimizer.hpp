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

#include <functional>
#include <string>
#include <vector>

#include "nisq/core/linalg.hpp"

namespace nisq {

enum class GradientMode { ParameterShift, FiniteDifference };

struct OptimizerConfig {
  double step = 0.1;        // initial step size a
  int max_iters = 2000;
  GradientMode gradient = GradientMode::ParameterShift;
  double tolerance = 1e-10; // on |Delta E| between accepted steps
  double fd_step = 1e-6;
  int restarts = 0;         // extra random starts; the best result wins

  void validate() const;
};

struct OptimizeResult {
  double value = 0.0;
  RVector params;
  std::vector<double> trace;  // best-so-far value after each iteration
  int iterations = 0;
  bool converged = false;
};

// theta <- theta - a grad E(theta), with a adapted by backtracking: a step
// that does not lower E is retried at a/2, an accepted step lets a grow by
// 1.5 for the next iteration. Stops when an accepted step changes E by less
// than the tolerance and the gradient norm is below sqrt(tolerance).
OptimizeResult gradient_descent(const std::function<double(const RVector&)>& f,
                                const std::function<RVector(const RVector&)>& grad, RVector x0,
                                const OptimizerConfig& config);

}  // namespace nisq
