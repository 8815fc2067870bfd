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

#include <vector>

#include "nisq/core/linalg.hpp"
#include "nisq/qem/estimate.hpp"

namespace nisq {

// Weights beta_k with sum beta = 1 and sum beta_k alpha_k^j = 0 for
// j = 1..n, i.e. beta_k = prod_{i != k} alpha_i / (alpha_i - alpha_k).
// Throws on duplicate factors.
RVector richardson_coefficients(const std::vector<double>& alphas);

// Richardson extrapolation over boost factors alpha_k (the point rates),
// which must start at 1 and increase strictly. gamma = sum beta^2.
MitigatedEstimate richardson(const std::vector<DataPoint>& points);

// Two-point exponential extrapolation for N_g gates at error rate eps:
// (alpha e^{N_g eps} M(eps) - e^{N_g alpha eps} M(alpha eps)) / (alpha - 1).
// low.rate is eps; high.rate must be alpha * eps.
MitigatedEstimate exponential_extrapolate(const DataPoint& low, const DataPoint& high, double alpha, double n_gates);

struct MultiExponentialFit {
  MitigatedEstimate estimate;
  RVector b;
  RVector decay;  // Gamma_k, ascending
};

// Fits sum_k b_k exp(-Gamma_k rate) by variable projection and reports
// sum b_k. gamma and std_error treat the fitted decay rates as fixed.
// Flags fits that do not converge.
MultiExponentialFit multi_exponential_fit(const std::vector<DataPoint>& points, int exponentials);

struct FitPoint {
  std::vector<double> rates;  // one entry per noise parameter
  double value = 0.0;
  double std_error = 0.0;
};

// Monomials of total degree <= order in the given number of variables,
// constant first, then by degree, lexicographic within a degree.
std::vector<std::vector<int>> monomial_exponents(int variables, int order);

struct LeastSquaresFit {
  MitigatedEstimate estimate;
  RVector coefficients;  // one per monomial
  std::vector<std::vector<int>> monomials;
  int order = 0;
};

// Ordinary least squares for the polynomial model; M(0) is the constant
// coefficient. Points sharing one rate vector force order 0. Throws when the
// design matrix is rank deficient.
LeastSquaresFit least_squares_fit(const std::vector<FitPoint>& points, int order);

// M(0) = sgn(M_e) sqrt(M_e^2 cosh^2 mu - M_o^2 sinh^2 mu) from the even- and
// odd-sector values at mean error count mu. A negative radicand is flagged
// and the even-sector value is returned in its place.
MitigatedEstimate hyperbolic_extrapolate(double m_even, double m_odd, double mu);

// Sector values of the single-rate decay model <M>_k = M0 (1 - Gamma_d)^k.
double decay_model_even(double m0, double gamma_d, double mu);
double decay_model_odd(double m0, double gamma_d, double mu);

}  // namespace nisq
