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

#include <string>
#include <utility>
#include <vector>

namespace nisq {

// A mitigated expectation value.
//
// gamma is the variance amplification relative to one unmitigated estimate
// taken with the same number of shots per input point.
struct MitigatedEstimate {
  std::string method;
  double value = 0.0;
  double std_error = 0.0;
  double gamma = 1.0;
  std::vector<double> rates;   // noise rates or boost factors of the inputs
  std::vector<double> inputs;  // raw value at each rate
  double fit_residual = 0.0;
  // Pipeline intermediates, in stage order.
  std::vector<std::pair<std::string, double>> stages;
  bool flagged = false;
  std::string flag;
};

// One measured point of an extrapolation.
struct DataPoint {
  double rate = 0.0;
  double value = 0.0;
  double std_error = 0.0;
};

// Throws unless std_error >= 0 and the value fields are finite. gamma >= 1 is
// checked only when require_gamma is set: averaging fits can legitimately
// report less.
void validate(const MitigatedEstimate& e, bool require_gamma = true);

}  // namespace nisq
