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


#include "nisq/cli/runner.hpp"

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "nisq/core/circuit.hpp"
#include "nisq/core/hamiltonian.hpp"
#include "nisq/core/random.hpp"
#include "nisq/core/simulator.hpp"
#include "nisq/vqo/excited.hpp"
#include "nisq/vqo/linear_algebra.hpp"
#include "nisq/vqo/qaoa.hpp"
#include "nisq/vqo/sat.hpp"
#include "nisq/vqo/vqe.hpp"
#include "nisq/vqs/evolve.hpp"
#include "nisq/vqs/gibbs.hpp"

namespace nisq::cli {

using nlohmann::json;

namespace {

json vec_json(const RVector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json cvec_json(const CVector& v) {
  std::vector<double> re, im;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return {{"re", re}, {"im", im}};
}

json estimate_json(const MitigatedEstimate& e) {
  json stages = json::array();
  for (const auto& [name, value] : e.stages) stages.push_back({{"stage", name}, {"value", value}});
  json j{{"method", e.method},   {"value", e.value}, {"std_error", e.std_error}, {"gamma", e.gamma},
         {"inputs", e.inputs},   {"rates", e.rates}, {"stages", stages},         {"flagged", e.flagged}};
  if (e.flagged) j["flag"] = e.flag;
  return j;
}

// Everything a task needs, resolved once per run.
struct Setup {
  const ExperimentConfig& config;
  PauliSum hamiltonian;
  int n = 0;
  std::optional<NoiseModel> noise;
};

// Per-task output sink.
class Sink {
 public:
  Sink(RunReport& report, std::size_t index, std::string type) : report_(report), index_(index), type_(std::move(type)) {}

  void point(const std::string& series, double x, double y) { report_.trace.push_back({index_, type_, series, x, y}); }

  void extrapolation(const MitigatedEstimate& e) {
    for (std::size_t k = 0; k < e.rates.size() && k < e.inputs.size(); ++k)
      report_.extrapolation.push_back({index_, e.method, "input", e.rates[k], e.inputs[k]});
    report_.extrapolation.push_back({index_, e.method, "estimate", 0.0, e.value});
  }

  void flag(json& result, bool flagged, const std::string& why) {
    result["flagged"] = flagged;
    if (!flagged) return;
    result["flag"] = why;
    report_.flagged = true;
    report_.flags.push_back("task " + std::to_string(index_) + " (" + type_ + "): " + why);
  }

 private:
  RunReport& report_;
  std::size_t index_;
  std::string type_;
};

ParametrisedCircuit make_ansatz(const Setup& s) { return hardware_efficient_ansatz(s.n, s.config.ansatz.depth); }

// Eigen-decomposition of the dense Hamiltonian, shared by exact propagators.
struct DenseSpectrum {
  RVector values;
  CMatrix vectors;
  explicit DenseSpectrum(const PauliSum& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
    if (es.info() != Eigen::Success) throw std::runtime_error("oracle: diagonalisation failed");
    values = es.eigenvalues();
    vectors = es.eigenvectors();
  }
  // e^{-iHt}|psi> or, for imaginary time, e^{-Ht}|psi> normalised.
  CVector propagate(const CVector& psi, double t, bool imaginary) const {
    CVector c = vectors.adjoint() * psi;
    const double shift = values.minCoeff();
    for (Eigen::Index i = 0; i < c.size(); ++i)
      c(i) *= imaginary ? Complex(std::exp(-(values(i) - shift) * t)) : std::exp(Complex(0.0, -values(i) * t));
    CVector out = vectors * c;
    if (imaginary) out.normalize();
    return out;
  }
};

double fidelity(const CVector& a, const CVector& b) { return std::norm(a.dot(b)); }

ParametrisedCircuit v0_circuit(const LinearAlgebraTask& t, int n) {
  ParametrisedCircuit c(n);
  if (t.v0 == "plus")
    for (int q = 0; q < n; ++q) c.h(q);
  return c;
}

// Normalised M|v0> or M^{-1}|v0>.
CVector exact_linear_solution(const LinearAlgebraTask& t, const PauliSum& m, int n) {
  const CVector v0 = prepare(v0_circuit(t, n), RVector());
  const CMatrix mm = m.matrix();
  CVector x;
  if (t.task == "multiply") {
    x = mm * v0;
  } else {
    Eigen::FullPivLU<CMatrix> lu(mm);
    if (!lu.isInvertible()) throw std::invalid_argument("linear-algebra: M is singular");
    x = lu.solve(v0);
  }
  if (x.norm() < 1e-300) throw std::invalid_argument("linear-algebra: M|v0> = 0");
  return x.normalized();
}

// --- run ---------------------------------------------------------------------

void run_vqe(const Setup& s, const VqeTask& t, std::uint64_t seed, Sink& sink, json& out) {
  const ParametrisedCircuit ansatz = make_ansatz(s);
  const VqeResult r = vqe(s.hamiltonian, ansatz, t.optimizer, seed);
  out["energy"] = r.energy;
  out["params"] = vec_json(r.params);
  out["iterations"] = r.iterations;
  out["converged"] = r.converged;
  for (std::size_t k = 0; k < r.trace.size(); ++k) sink.point("energy", double(k), r.trace[k]);
  if (s.n <= kMaxOracleQubits) out["exact_ground_energy"] = DenseSpectrum(s.hamiltonian).values(0);
  if (s.config.shots > 0) {
    const QuantumState psi = QuantumState::from_vector(prepare(ansatz, r.params));
    const SampledEstimate e = sampled_expectation(psi, s.hamiltonian, {s.config.shots, derive_seed(seed, 1)});
    out["sampled_energy"] = {{"value", e.value}, {"std_error", e.std_error}, {"shots", s.config.shots}};
  }
  bool flagged = r.flagged;
  std::string why = r.flag;
  if (s.noise) {
    const CVector ref = ansatz.reference();
    const CMatrix rho = run_noisy_circuit(ansatz, r.params, *s.noise, CMatrix(ref * ref.adjoint()));
    out["noisy_energy"] = expectation(rho, s.hamiltonian);
  }
  if (!s.config.pipeline.empty()) {
    const MitigatedEstimate e = combine(s.config.pipeline, ansatz, r.params, s.noise ? *s.noise : NoiseModel{},
                                       s.hamiltonian);
    out["mitigated"] = estimate_json(e);
    sink.extrapolation(e);
    if (e.flagged && !flagged) {
      flagged = true;
      why = "mitigation: " + e.flag;
    }
  }
  sink.flag(out, flagged, why);
}

void run_qaoa(const Setup& s, const QaoaTask& t, std::uint64_t seed, Sink& sink, json& out) {
  QaoaConfig qc;
  qc.depth = t.depth;
  qc.schedule = t.schedule == "fixed" ? QaoaSchedule::Fixed : QaoaSchedule::Morphing;
  qc.morph_steps = t.morph_steps;
  qc.optimizer = t.optimizer;
  const QaoaResult r = qaoa(s.hamiltonian, qc, seed);
  out["energy"] = r.energy;
  out["params"] = vec_json(r.params);
  out["best_bitstring"] = bitstring(r.best_basis, s.n);
  out["best_probability"] = r.best_probability;
  if (s.config.problem.source == ProblemConfig::Source::Dimacs) {
    const CnfFormula f = parse_dimacs(s.config.problem.text);
    const std::vector<bool> a = assignment_of(r.best_basis, f.variables);
    out["assignment"] = a;
    out["violated_clauses"] = violated_clauses(f, a);
  }
  for (std::size_t k = 0; k < r.trace.size(); ++k) sink.point("energy", double(k), r.trace[k]);
  for (Eigen::Index b = 0; b < r.probabilities.size(); ++b) sink.point("probability", double(b), r.probabilities(b));
  sink.flag(out, r.flagged, r.flag);
}

void run_spectrum(const Setup& s, const SpectrumTask& t, std::uint64_t seed, Sink& sink, json& out) {
  const ParametrisedCircuit ansatz = make_ansatz(s);
  const SpectrumResult r = t.method == "overlap"
                               ? excited_by_overlap(s.hamiltonian, ansatz, t.penalty, t.levels - 1, t.optimizer, seed)
                               : ssvqe(s.hamiltonian, ansatz, t.levels - 1, t.optimizer, seed);
  out["method"] = r.method;
  out["energies"] = r.energies;
  out["residuals"] = r.residuals;
  for (std::size_t k = 0; k < r.energies.size(); ++k) sink.point("energy", double(k), r.energies[k]);
  sink.flag(out, r.flagged, r.flag);
}

// Shared by run and oracle: the oracle reports the exact-state fidelity
// column of the same variational trajectory.
EvolutionTrace run_evolution(const Setup& s, const EvolveTask& t, std::uint64_t seed, const ParametrisedCircuit& ansatz) {
  const RVector theta0 =
      t.init == "zeros" ? RVector(RVector::Zero(ansatz.num_params())) : random_parameters(ansatz.num_params(), seed);
  EvolveConfig ec;
  if (t.residual_budget >= 0.0) ec.residual_budget = t.residual_budget;
  return evolve(ansatz, theta0, s.hamiltonian, t.mode == "real" ? EvolutionMode::Real : EvolutionMode::Imaginary,
                t.time, t.dt, ec);
}

void fidelity_column(const Setup& s, const EvolveTask& t, const ParametrisedCircuit& ansatz, const EvolutionTrace& tr,
                     Sink& sink, json& out, bool exact_energy) {
  const DenseSpectrum spec(s.hamiltonian);
  const CVector psi0 = prepare(ansatz, tr.params.front());
  const bool imaginary = t.mode == "imaginary";
  double f = 1.0;
  CVector last;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    last = spec.propagate(psi0, tr.times[i], imaginary);
    f = fidelity(last, prepare(ansatz, tr.params[i]));
    sink.point("fidelity", tr.times[i], f);
    if (exact_energy) sink.point("exact_energy", tr.times[i], expectation(last, s.hamiltonian));
  }
  out["final_fidelity"] = f;
  if (exact_energy) {
    out["exact_final_energy"] = expectation(last, s.hamiltonian);
    out["exact_final_state"] = cvec_json(last);
  }
}

void run_evolve(const Setup& s, const EvolveTask& t, std::uint64_t seed, Sink& sink, json& out) {
  const ParametrisedCircuit ansatz = make_ansatz(s);
  const EvolutionTrace tr = run_evolution(s, t, seed, ansatz);
  out["steps"] = tr.times.size() - 1;
  out["final_energy"] = tr.energies.back();
  out["final_params"] = vec_json(tr.final_params());
  out["flagged_steps"] = tr.flagged_steps.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    sink.point("energy", tr.times[i], tr.energies[i]);
    sink.point("residual", tr.times[i], tr.residuals[i]);
    worst = std::max(worst, tr.residuals[i]);
  }
  out["max_residual"] = worst;
  if (s.n <= kMaxOracleQubits) fidelity_column(s, t, ansatz, tr, sink, out, false);
  sink.flag(out, tr.flagged, tr.flag);
}

void run_gibbs(const Setup& s, const GibbsTask& t, Sink& sink, json& out) {
  const ParametrisedCircuit joint = gibbs_ansatz(s.n, t.max_weight);
  const GibbsResult r = prepare_gibbs(s.hamiltonian, joint, t.tau, t.dt);
  std::vector<double> pops;
  for (Eigen::Index i = 0; i < r.rho.rows(); ++i) pops.push_back(r.rho(i, i).real());
  out["populations"] = pops;
  out["energy"] = expectation(r.rho, s.hamiltonian);
  for (std::size_t i = 0; i < r.trace.times.size(); ++i) sink.point("energy", r.trace.times[i], r.trace.energies[i]);
  sink.flag(out, r.trace.flagged, r.trace.flag);
}

void run_linear_algebra(const Setup& s, const LinearAlgebraTask& t, std::uint64_t seed, Sink& sink, json& out) {
  const ParametrisedCircuit ansatz = make_ansatz(s);
  const PauliSum m = PauliSum::parse(t.matrix);
  const ParametrisedCircuit v0 = v0_circuit(t, s.n);
  const CostLocality loc = t.locality == "global" ? CostLocality::Global : CostLocality::Local;
  RVector params;
  bool flagged = false;
  std::string why;
  if (t.task == "solve" && t.steps > 0) {
    const MorphingSchedule schedule = linear_solve_schedule(m, v0, loc);
    const VqeResult start = minimise(schedule(0.0), ansatz, t.optimizer, seed);
    const MorphingResult r = hamiltonian_morphing(schedule, ansatz, t.steps, start.params, t.optimizer, t.tolerance);
    out["cost"] = r.energy;
    params = r.params;
    for (std::size_t k = 0; k < r.s_values.size(); ++k) sink.point("cost", r.s_values[k], r.energies[k]);
    if (r.flagged) out["failing_s"] = r.failing_s;
    flagged = r.flagged;
    why = r.flag;
  } else {
    const CostFunction cost =
        linear_algebra_hamiltonian(m, v0, t.task == "solve" ? LinearTask::Solve : LinearTask::Multiply, loc);
    const VqeResult r = minimise(cost, ansatz, t.optimizer, seed);
    out["cost"] = r.energy;
    params = r.params;
    for (std::size_t k = 0; k < r.trace.size(); ++k) sink.point("cost", double(k), r.trace[k]);
    flagged = r.flagged;
    why = r.flag;
  }
  out["params"] = vec_json(params);
  if (s.n <= kMaxOracleQubits) out["solution_fidelity"] = fidelity(exact_linear_solution(t, m, s.n), prepare(ansatz, params));
  sink.flag(out, flagged, why);
}

// --- oracle ------------------------------------------------------------------

void oracle_task(const Setup& s, const TaskConfig& task, std::uint64_t seed, Sink& sink, json& out) {
  const PauliSum& h = s.hamiltonian;
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, VqeTask> || std::is_same_v<T, SpectrumTask>) {
          const DenseSpectrum spec(h);
          out["ground_energy"] = spec.values(0);
          out["eigenvalues"] = vec_json(spec.values);
          if constexpr (std::is_same_v<T, SpectrumTask>)
            out["energies"] = vec_json(spec.values.head(std::min<Eigen::Index>(t.levels, spec.values.size())));
          for (Eigen::Index k = 0; k < spec.values.size(); ++k) sink.point("eigenvalue", double(k), spec.values(k));
        } else if constexpr (std::is_same_v<T, QaoaTask>) {
          const CMatrix hm = h.matrix();
          double best = std::numeric_limits<double>::infinity();
          for (Eigen::Index b = 0; b < hm.rows(); ++b) best = std::min(best, hm(b, b).real());
          std::vector<std::string> optimal;
          for (Eigen::Index b = 0; b < hm.rows(); ++b)
            if (hm(b, b).real() <= best + 1e-9) optimal.push_back(bitstring(std::uint64_t(b), s.n));
          out["min_energy"] = best;
          out["optimal_bitstrings"] = optimal;
        } else if constexpr (std::is_same_v<T, EvolveTask>) {
          const ParametrisedCircuit ansatz = make_ansatz(s);
          const EvolutionTrace tr = run_evolution(s, t, seed, ansatz);
          fidelity_column(s, t, ansatz, tr, sink, out, true);
        } else if constexpr (std::is_same_v<T, GibbsTask>) {
          const DenseSpectrum spec(h);
          const double shift = spec.values.minCoeff();
          RVector w(spec.values.size());
          for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = std::exp(-2.0 * t.tau * (spec.values(i) - shift));
          w /= w.sum();
          const CMatrix rho = spec.vectors * w.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
          std::vector<double> pops;
          for (Eigen::Index i = 0; i < rho.rows(); ++i) pops.push_back(rho(i, i).real());
          out["populations"] = pops;
          out["energy"] = expectation(rho, h);
        } else {
          const PauliSum m = PauliSum::parse(t.matrix);
          out["solution"] = cvec_json(exact_linear_solution(t, m, s.n));
          out["cost_minimum"] = 0.0;
        }
      },
      task);
  out["flagged"] = false;
}

Setup make_setup(const ExperimentConfig& config) {
  Setup s{config, problem_hamiltonian(config.problem), problem_qubits(config.problem), std::nullopt};
  if (config.noise) s.noise = build_noise_model(*config.noise, s.n);
  return s;
}

template <typename F>
RunReport drive(const ExperimentConfig& config, const std::string& mode, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.mode = mode;
  report.config_hash = config_hash(config);
  report.seed = config.seed;
  const Setup s = make_setup(config);
  for (std::size_t i = 0; i < config.tasks.size(); ++i) {
    const std::string type = task_name(config.tasks[i]);
    Sink sink(report, i, type);
    json out{{"task", i}, {"type", type}};
    body(s, config.tasks[i], derive_seed(config.seed, i), sink, out);
    report.tasks.push_back(std::move(out));
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
}

}  // namespace

ExperimentConfig apply_options(ExperimentConfig config, const RunOptions& options) {
  if (options.seed) config.seed = *options.seed;
  if (options.strict_noise) {
    if (!config.noise) config.noise = NoiseConfig{};
    config.noise->strict = true;
  }
  if (options.out_dir) config.out_dir = *options.out_dir;
  return config;
}

void preflight(const ExperimentConfig& config) {
  const int n = problem_qubits(config.problem);
  check_statevector_capacity(n);
  for (const auto& t : config.tasks)
    if (std::holds_alternative<GibbsTask>(t)) check_statevector_capacity(2 * n);
  if (config.noise || !config.pipeline.empty()) check_density_capacity(n);
  if (config.noise && config.noise->strict) {
    // Every gate the noisy stages will run needs a channel.
    const NoiseModel model = build_noise_model(*config.noise, n);
    if (!model.continuous) {
      const ParametrisedCircuit ansatz = hardware_efficient_ansatz(n, config.ansatz.depth);
      for (const auto& g : ansatz.gates())
        if (!model.channel_for(g))
          throw std::invalid_argument("strict noise: no channel for gate '" + g.name + "'");
    }
  }
}

RunReport run(const ExperimentConfig& config, unsigned jobs) {
  if (jobs < 1) throw std::invalid_argument("--jobs must be at least 1");
  preflight(config);
  return drive(config, "run", [](const Setup& s, const TaskConfig& task, std::uint64_t seed, Sink& sink, json& out) {
    std::visit(
        [&](const auto& t) {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, VqeTask>)
            run_vqe(s, t, seed, sink, out);
          else if constexpr (std::is_same_v<T, QaoaTask>)
            run_qaoa(s, t, seed, sink, out);
          else if constexpr (std::is_same_v<T, SpectrumTask>)
            run_spectrum(s, t, seed, sink, out);
          else if constexpr (std::is_same_v<T, EvolveTask>)
            run_evolve(s, t, seed, sink, out);
          else if constexpr (std::is_same_v<T, GibbsTask>)
            run_gibbs(s, t, sink, out);
          else
            run_linear_algebra(s, t, seed, sink, out);
        },
        task);
  });
}

RunReport oracle(const ExperimentConfig& config) {
  const int n = problem_qubits(config.problem);
  if (n > kMaxOracleQubits)
    throw CapacityError("oracle register of " + std::to_string(n) + " qubits exceeds the cap of " +
                        std::to_string(kMaxOracleQubits));
  preflight(config);
  return drive(config, "oracle", oracle_task);
}

json report_json(const RunReport& r) {
  return {{"mode", r.mode}, {"config_hash", r.config_hash}, {"seed", r.seed},
          {"tasks", r.tasks}, {"flagged", r.flagged},       {"flags", r.flags}};
}

std::string trace_csv(const RunReport& r) {
  std::string out = "task,type,series,x,y\n";
  for (const auto& p : r.trace)
    out += std::to_string(p.task) + "," + p.type + "," + p.series + "," + fmt(p.x) + "," + fmt(p.y) + "\n";
  return out;
}

std::string extrapolation_csv(const RunReport& r) {
  std::string out = "task,method,kind,rate,value\n";
  for (const auto& p : r.extrapolation)
    out += std::to_string(p.task) + "," + p.method + "," + p.kind + "," + fmt(p.rate) + "," + fmt(p.value) + "\n";
  return out;
}

void write_outputs(const RunReport& r, const std::string& dir) {
  const std::filesystem::path d(dir);
  std::filesystem::create_directories(d);
  const std::string body = report_json(r).dump(2) + "\n";
  if (r.mode == "oracle") {
    write_file(d / "oracle.json", body);
    write_file(d / "oracle_trace.csv", trace_csv(r));
    return;
  }
  write_file(d / "results.json", body);
  write_file(d / "trace.csv", trace_csv(r));
  write_file(d / "extrapolation.csv", extrapolation_csv(r));
}

int exit_code(const RunReport& r) { return r.flagged ? 2 : 0; }

}  // namespace nisq::cli
