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

#include "nisq/vqo/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace nisq {

void OptimizerConfig::validate() const {
  if (!(step > 0.0)) throw std::invalid_argument("optimizer: step size must be positive");
  if (!(tolerance > 0.0)) throw std::invalid_argument("optimizer: tolerance must be positive");
  if (max_iters < 1) throw std::invalid_argument("optimizer: max_iters must be at least 1");
  if (!(fd_step > 0.0)) throw std::invalid_argument("optimizer: fd_step must be positive");
  if (restarts < 0) throw std::invalid_argument("optimizer: restarts must be non-negative");
}

OptimizeResult gradient_descent(const std::function<double(const RVector&)>& f,
                                const std::function<RVector(const RVector&)>& grad, RVector x,
                                const OptimizerConfig& config) {
  config.validate();
  OptimizeResult out;
  double fx = f(x);
  if (!std::isfinite(fx)) throw std::runtime_error("gradient_descent: non-finite objective at start");
  double a = config.step;
  const double grad_tol = std::sqrt(config.tolerance);
  for (int it = 0; it < config.max_iters; ++it) {
    out.iterations = it + 1;
    const RVector g = grad(x);
    const double gn = g.norm();
    if (gn == 0.0) {
      out.converged = true;
      out.trace.push_back(fx);
      break;
    }
    bool accepted = false;
    double f_new = fx;
    RVector x_new;
    for (int halvings = 0; halvings < 60; ++halvings) {
      x_new = x - a * g;
      f_new = f(x_new);
      // Armijo condition with a small sufficient-decrease constant.
      if (std::isfinite(f_new) && f_new <= fx - 1e-4 * a * gn * gn) {
        accepted = true;
        break;
      }
      a *= 0.5;
    }
    if (!accepted) {
      // No descent at any resolvable step: numerically stationary.
      out.converged = gn < grad_tol;
      out.trace.push_back(fx);
      break;
    }
    const double change = fx - f_new;
    x = x_new;
    fx = f_new;
    out.trace.push_back(fx);
    a = std::min(a * 1.5, 1e3 * config.step);
    if (change < config.tolerance && gn < grad_tol) {
      out.converged = true;
      break;
    }
  }
  out.value = fx;
  out.params = x;
  return out;
}

}  // namespace nisq
