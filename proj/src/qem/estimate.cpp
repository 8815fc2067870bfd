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

#include "nisq/qem/estimate.hpp"

#include <cmath>
#include <stdexcept>

namespace nisq {

void validate(const MitigatedEstimate& e, bool require_gamma) {
  if (!std::isfinite(e.std_error) || e.std_error < 0.0)
    throw std::logic_error(e.method + ": standard error must be finite and non-negative");
  if (!std::isfinite(e.gamma) || e.gamma <= 0.0) throw std::logic_error(e.method + ": invalid sampling cost");
  if (require_gamma && e.gamma < 1.0 - 1e-12) throw std::logic_error(e.method + ": sampling cost below 1");
  if (!e.flagged && !std::isfinite(e.value)) throw std::logic_error(e.method + ": non-finite value");
}

}  // namespace nisq
