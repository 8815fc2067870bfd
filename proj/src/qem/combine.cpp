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


#include "nisq/qem/combine.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "nisq/core/simulator.hpp"
#include "nisq/noise/boost.hpp"
#include "nisq/qem/extrapolation.hpp"
#include "nisq/qem/quasi_probability.hpp"

namespace nisq {

Stage Stage::boost(std::vector<double> alphas) {
  Stage s;
  s.kind = StageKind::Boost;
  s.alphas = std::move(alphas);
  return s;
}

Stage Stage::quasi_probability(QpScope scope) {
  Stage s;
  s.kind = StageKind::QuasiProbability;
  s.scope = scope;
  return s;
}

Stage Stage::verify(SymmetryOperator symmetry, VerifyMode mode) {
  Stage s;
  s.kind = StageKind::Symmetry;
  s.symmetry = std::move(symmetry);
  s.mode = mode;
  return s;
}

Stage Stage::extrapolate(ExtrapolationKind kind, double mu) {
  Stage s;
  s.kind = StageKind::Extrapolate;
  s.extrapolation = kind;
  s.mu = mu;
  return s;
}

std::string to_string(StageKind k) {
  switch (k) {
    case StageKind::Boost: return "boost";
    case StageKind::QuasiProbability: return "quasi_probability";
    case StageKind::Symmetry: return "symmetry";
    case StageKind::Extrapolate: return "extrapolate";
  }
  return "?";
}

std::string to_string(ExtrapolationKind k) {
  switch (k) {
    case ExtrapolationKind::Linear: return "linear";
    case ExtrapolationKind::Richardson: return "richardson";
    case ExtrapolationKind::Exponential: return "exponential";
    case ExtrapolationKind::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

namespace {

struct Plan {
  const Stage* boost = nullptr;
  const Stage* qp = nullptr;
  const Stage* symmetry = nullptr;
  const Stage* extrapolate = nullptr;
};

int rank_of(StageKind k) {
  switch (k) {
    case StageKind::Boost:
    case StageKind::QuasiProbability: return 0;
    case StageKind::Symmetry: return 1;
    case StageKind::Extrapolate: return 2;
  }
  return 3;
}

Plan plan_of(const std::vector<Stage>& stages) {
  if (stages.empty()) throw std::invalid_argument("pipeline: no stages");
  Plan p;
  int last = 0;
  for (const auto& s : stages) {
    const Stage** slot = nullptr;
    switch (s.kind) {
      case StageKind::Boost: slot = &p.boost; break;
      case StageKind::QuasiProbability: slot = &p.qp; break;
      case StageKind::Symmetry: slot = &p.symmetry; break;
      case StageKind::Extrapolate: slot = &p.extrapolate; break;
    }
    if (*slot) throw std::invalid_argument("pipeline: stage '" + to_string(s.kind) + "' appears twice");
    if (rank_of(s.kind) < last)
      throw std::invalid_argument("pipeline: stage '" + to_string(s.kind) + "' cannot follow a later-phase stage");
    last = rank_of(s.kind);
    *slot = &s;
  }
  if (p.boost) {
    const auto& a = p.boost->alphas;
    if (a.empty() || std::abs(a[0] - 1.0) > 1e-12) throw std::invalid_argument("pipeline: boost factors must start at 1");
    for (std::size_t i = 1; i < a.size(); ++i)
      if (!(a[i] > a[i - 1])) throw std::invalid_argument("pipeline: boost factors must increase");
  }
  if (p.symmetry) {
    if (!p.symmetry->symmetry) throw std::invalid_argument("pipeline: symmetry stage needs a declared symmetry operator");
    p.symmetry->symmetry->validate();
  }
  if (p.qp && p.qp->scope == QpScope::Partial && !p.symmetry)
    throw std::invalid_argument("pipeline: partial quasi-probability needs a symmetry stage");
  const std::size_t rates = p.boost ? p.boost->alphas.size() : 1;
  if (p.boost && !p.extrapolate) throw std::invalid_argument("pipeline: boosted rates need an extrapolation stage");
  if (p.extrapolate) {
    switch (p.extrapolate->extrapolation) {
      case ExtrapolationKind::Linear:
      case ExtrapolationKind::Exponential:
        if (rates != 2) throw std::invalid_argument("pipeline: " + to_string(p.extrapolate->extrapolation) + " extrapolation needs exactly 2 effective rates");
        break;
      case ExtrapolationKind::Richardson:
        if (rates < 2) throw std::invalid_argument("pipeline: extrapolation needs at least 2 effective rates");
        break;
      case ExtrapolationKind::Hyperbolic:
        if (!p.symmetry) throw std::invalid_argument("pipeline: hyperbolic extrapolation needs a symmetry stage");
        if (p.boost) throw std::invalid_argument("pipeline: hyperbolic extrapolation works at a single rate");
        break;
    }
  }
  return p;
}

// The channel each noisy gate application carries once quasi-probability
// recovery has acted: nothing for full removal, the anticommuting part for
// partial removal, the raw channel otherwise.
std::optional<QuantumChannel> effective_channel(const GateOp& g, const NoiseModel& noise, const Plan& plan) {
  const QuantumChannel* c = noise.channel_for(g);
  if (!c) return std::nullopt;
  if (!plan.qp) return *c;
  if (plan.qp->scope == QpScope::Full) return std::nullopt;
  return anticommuting_part(*c, plan.symmetry->symmetry->pauli, noise_targets(g));
}

void apply_step(CMatrix& rho, int n, const GateOp& g, const RVector& theta, const std::optional<QuantumChannel>& c,
                const std::vector<std::optional<QuantumChannel>>& idle) {
  apply_gate(rho, n, g, theta);
  if (c) rho = c->apply(rho, n, noise_targets(g));
  for (int q = 0; q < n; ++q)
    if (idle[static_cast<std::size_t>(q)]) rho = idle[static_cast<std::size_t>(q)]->apply(rho, n, {q});
}

void apply_folds(CMatrix& rho, int n, const GateOp& g, int k, const RVector& theta, const NoiseModel& noise,
                 const Plan& plan, const std::vector<std::optional<QuantumChannel>>& idle) {
  const GateOp inv = g.inverse();
  const auto cg = effective_channel(g, noise, plan);
  const auto ci = effective_channel(inv, noise, plan);
  apply_step(rho, n, g, theta, cg, idle);
  for (int i = 0; i < k; ++i) {
    apply_step(rho, n, inv, theta, ci, idle);
    apply_step(rho, n, g, theta, cg, idle);
  }
}

bool gate_is_noisy(const GateOp& g, const NoiseModel& noise) {
  return noise.channel_for(g) != nullptr || (noise.continuous && !noise.continuous->jumps.empty());
}

CMatrix run_at(double alpha, const ParametrisedCircuit& circuit, const RVector& theta, const NoiseModel& noise,
               const Plan& plan) {
  const int n = circuit.qubits();
  const FoldMix m = fold_mix(alpha);
  const auto idle = idle_channels(noise, n);
  const CVector ref = circuit.reference();
  CMatrix rho = ref * ref.adjoint();
  for (const auto& g : circuit.gates()) {
    if (!gate_is_noisy(g, noise)) {
      apply_step(rho, n, g, theta, std::nullopt, idle);
      continue;
    }
    CMatrix low = rho;
    apply_folds(low, n, g, m.k_low, theta, noise, plan, idle);
    if (m.w_high > 0.0) {
      CMatrix high = rho;
      apply_folds(high, n, g, m.k_high, theta, noise, plan, idle);
      rho = (1.0 - m.w_high) * low + m.w_high * high;
    } else {
      rho = std::move(low);
    }
  }
  return rho;
}

double error_rate(const QuantumChannel& c) {
  const double p = 1.0 - pauli_error_probabilities(c).at(std::string(static_cast<std::size_t>(c.arity), 'I'));
  if (p >= 1.0) throw std::invalid_argument("expected_error_count: channel with certain error");
  return -std::log1p(-std::max(p, 0.0));
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

void validate_pipeline(const std::vector<Stage>& stages) { plan_of(stages); }

double expected_error_count(const ParametrisedCircuit& circuit, const NoiseModel& noise,
                            const std::optional<SymmetryOperator>& partial_symmetry) {
  const int n = circuit.qubits();
  const auto idle = idle_channels(noise, n);
  double mu = 0.0;
  for (const auto& g : circuit.gates()) {
    if (const QuantumChannel* c = noise.channel_for(g))
      mu += error_rate(partial_symmetry ? anticommuting_part(*c, partial_symmetry->pauli, noise_targets(g)) : *c);
    if (gate_is_noisy(g, noise))
      for (const auto& i : idle)
        if (i) mu += error_rate(*i);
  }
  return mu;
}

MitigatedEstimate combine(const std::vector<Stage>& stages, const ParametrisedCircuit& circuit, const RVector& theta,
                          const NoiseModel& noise, const PauliSum& observable) {
  const Plan plan = plan_of(stages);
  check_density_capacity(circuit.qubits());
  circuit.check_params(theta);
  observable.require_hermitian("combine");
  if (observable.qubits() != circuit.qubits()) throw std::invalid_argument("combine: observable register mismatch");
  if (plan.qp && noise.continuous && !noise.continuous->jumps.empty() && noise.continuous->duration > 0.0)
    throw std::invalid_argument("combine: quasi-probability cannot remove continuous idle noise");

  // Sampling cost of quasi-probability per unboosted run.
  double qp_cost = 1.0;
  if (plan.qp) {
    const GateDecompositions d = plan.qp->scope == QpScope::Full
                                     ? decompose_circuit_noise(circuit, noise, standard_basis(1))
                                     : partial_circuit_decompositions(circuit, noise, plan.symmetry->symmetry->pauli);
    for (const auto& x : d)
      if (x) qp_cost *= x->cost();
  }

  MitigatedEstimate out;
  std::string name = "combined";
  for (const auto& s : stages) {
    name += (&s == &stages.front() ? ":" : "+") + to_string(s.kind);
    if (s.kind == StageKind::QuasiProbability && s.scope == QpScope::Partial) name += "(partial)";
    if (s.kind == StageKind::Extrapolate) name += "(" + to_string(s.extrapolation) + ")";
  }
  out.method = name;

  {
    const CMatrix raw = run_at(1.0, circuit, theta, noise, Plan{});
    out.stages.emplace_back("raw", expectation(raw, observable));
  }

  const std::vector<double> alphas = plan.boost ? plan.boost->alphas : std::vector<double>{1.0};
  std::vector<double> values, gammas;
  double odd_value = 0.0, even_acceptance = 1.0, odd_acceptance = 0.0;
  for (double a : alphas) {
    const CMatrix rho = run_at(a, circuit, theta, noise, plan);
    double v = expectation(rho, observable);
    double g = std::pow(qp_cost, 2.0 * a);
    const std::string tag = plan.boost ? fmt("[alpha=%g]", a) : "";
    if (plan.qp) out.stages.emplace_back("quasi_probability" + tag, v);
    if (plan.symmetry) {
      const SymmetryResult r = symmetry_verify(rho, *plan.symmetry->symmetry, observable, plan.symmetry->mode);
      v = r.estimate.value;
      g *= r.estimate.gamma;
      out.stages.emplace_back("symmetry" + tag, v);
      if (a == 1.0) {
        even_acceptance = r.acceptance;
        odd_acceptance = 1.0 - r.acceptance;
        if (odd_acceptance > 1e-12) {
          SymmetryOperator flipped = *plan.symmetry->symmetry;
          flipped.sector = -flipped.sector;
          odd_value = symmetry_verify(rho, flipped, observable, VerifyMode::Postselect).estimate.value;
        }
      }
    }
    if (plan.boost && !plan.symmetry && !plan.qp) out.stages.emplace_back("boost" + tag, v);
    values.push_back(v);
    gammas.push_back(g);
    out.rates.push_back(a);
    out.inputs.push_back(v);
  }

  if (!plan.extrapolate) {
    out.value = values[0];
    out.gamma = gammas[0];
    return out;
  }
  const Stage& ex = *plan.extrapolate;
  std::optional<SymmetryOperator> partial;
  if (plan.qp && plan.qp->scope == QpScope::Partial) partial = plan.symmetry->symmetry;
  auto mean_errors = [&] {
    if (ex.mu >= 0.0) return ex.mu;
    if (plan.qp && plan.qp->scope == QpScope::Full) return 0.0;
    return expected_error_count(circuit, noise, partial);
  };
  switch (ex.extrapolation) {
    case ExtrapolationKind::Linear:
    case ExtrapolationKind::Richardson: {
      std::vector<DataPoint> pts;
      for (std::size_t i = 0; i < values.size(); ++i) pts.push_back({alphas[i], values[i], 0.0});
      const MitigatedEstimate r = richardson(pts);
      const RVector beta = richardson_coefficients(alphas);
      out.value = r.value;
      out.gamma = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i) out.gamma += beta(static_cast<Eigen::Index>(i)) * beta(static_cast<Eigen::Index>(i)) * gammas[i];
      break;
    }
    case ExtrapolationKind::Exponential: {
      // Only N_g eps enters the formula, so eps is the mean error count and
      // N_g = 1.
      const double mu = mean_errors();
      const double alpha = alphas[1];
      const MitigatedEstimate r =
          exponential_extrapolate({mu, values[0], 0.0}, {alpha * mu, values[1], 0.0}, alpha, 1.0);
      out.value = r.value;
      const double a = alpha * std::exp(mu) / (alpha - 1.0), b = std::exp(alpha * mu) / (alpha - 1.0);
      out.gamma = a * a * gammas[0] + b * b * gammas[1];
      break;
    }
    case ExtrapolationKind::Hyperbolic: {
      const double mu = mean_errors();
      if (odd_acceptance <= 1e-12 && mu > 0.0) {
        out.value = values[0];
        out.flagged = true;
        out.flag = "combine: the odd sector is empty, hyperbolic extrapolation skipped";
        out.gamma = gammas[0];
        break;
      }
      const MitigatedEstimate r = hyperbolic_extrapolate(values[0], odd_value, mu);
      out.value = r.value;
      out.flagged = r.flagged;
      out.flag = r.flag;
      out.inputs.push_back(odd_value);
      // Each sector value is read from its own share of the runs.
      const double c = std::cosh(mu), s = std::sinh(mu);
      const double rad = values[0] * values[0] * c * c - odd_value * odd_value * s * s;
      double g = gammas[0];
      if (rad > 0.0) {
        const double de = values[0] * c * c / std::sqrt(rad), dodd = odd_value * s * s / std::sqrt(rad);
        const double base = gammas[0] * even_acceptance;  // quasi-probability part
        g = base * (de * de / even_acceptance + (odd_acceptance > 0.0 ? dodd * dodd / odd_acceptance : 0.0));
      }
      out.gamma = g;
      break;
    }
  }
  out.stages.emplace_back("extrapolate(" + to_string(ex.extrapolation) + ")", out.value);
  return out;
}

}  // namespace nisq
