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


#include <cmath>
#include <string>

#include "doctest.h"
#include "nisq/cli/config.hpp"
#include "nisq/cli/runner.hpp"
#include "nisq/core/linalg.hpp"

using namespace nisq;
using namespace nisq::cli;

namespace {

const char* kMinimal = R"(problem:
  pauli: |
    1 0 Z
tasks:
  - type: vqe
seed: 1
)";

const char* kIsing2 = R"(problem:
  model: transverse-ising
  n: 2
  h: 1.0
  lambda: 0.5
ansatz:
  depth: 3
tasks:
  - type: vqe
  - type: evolve
    mode: imaginary
    time: 2.0
    dt: 1.0e-2
  - type: gibbs
    tau: 0.3
    dt: 1.0e-2
noise:
  one_qubit: {channel: depolarizing, p: 0.002}
  two_qubit: {channel: depolarizing, p: 0.01}
mitigation:
  pipeline:
    - boost: [1, 3]
    - symmetry: {pauli: XX, sector: 1}
    - extrapolate: linear
seed: 9
)";

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "cfg.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("config schema") {
  SUBCASE("unknown keys are rejected with line and field") {
    const std::string e = error_of("problem:\n  model: transverse-ising\n  lamda: 0.5\n");
    CHECK(e == "cfg.yaml:3:3: problem.lamda: unknown key");
    CHECK(error_of("problem: {pauli: \"1 0 Z\"}\nseeed: 3\n").find("seeed: unknown key") != std::string::npos);
    CHECK(error_of("problem: {pauli: \"1 0 Z\"}\ntasks:\n  - type: vqe\n    optimiser: {}\n")
              .find("tasks[0].optimiser: unknown key") != std::string::npos);
  }
  SUBCASE("types, ranges and enumerations") {
    CHECK(error_of("problem: {model: transverse-ising, n: two}\n").find("problem.n: expected an integer") !=
          std::string::npos);
    CHECK(error_of("problem: {model: transverse-ising, n: 2}\ntasks: [{type: vqe, optimizer: {step: -1}}]\n")
              .find("tasks[0].optimizer.step") != std::string::npos);
    CHECK(error_of("problem: {model: transverse-ising, n: 2}\ntasks: [{type: anneal}]\n")
              .find("tasks[0].type: 'anneal' is not one of") != std::string::npos);
    CHECK(error_of("problem: {model: heisenberg}\n").find("problem.model") != std::string::npos);
  }
  SUBCASE("problem needs exactly one source") {
    CHECK(error_of("seed: 1\n").find("problem: missing") != std::string::npos);
    CHECK(error_of("problem: {model: transverse-ising, pauli: \"1 0 Z\"}\n").find("exactly one") != std::string::npos);
    CHECK(error_of("problem: {dimacs: \"p cnf 2 1\\n1 3 0\\n\"}\n").find("problem.dimacs") != std::string::npos);
  }
  SUBCASE("pipelines are validated before running") {
    const std::string base = "problem: {model: transverse-ising, n: 2}\nmitigation:\n  pipeline:\n";
    CHECK(error_of(base + "    - extrapolate: linear\n    - boost: [1, 3]\n").find("mitigation.pipeline") !=
          std::string::npos);
    CHECK(error_of(base + "    - symmetry: {pauli: XXX}\n").find("symmetry acts on 3 qubits") != std::string::npos);
    CHECK(error_of(base + "    - rescale: 2\n").find("unknown stage") != std::string::npos);
    CHECK(error_of(base).empty());
  }
  SUBCASE("malformed documents") {
    CHECK(error_of("problem: [1, 2\n").find("parse error") != std::string::npos);
    CHECK(error_of("").find("empty config") != std::string::npos);
  }
}

TEST_CASE("config hash") {
  const ExperimentConfig yaml = parse_config(kMinimal);
  const ExperimentConfig json = parse_config(R"({"seed": 1, "tasks": [{"type": "vqe"}], "problem": {"pauli": "1 0 Z\n"}})");
  CHECK(config_hash(yaml) == config_hash(json));
  CHECK(config_hash(yaml).size() == 16);
  // Explicit defaults and formatting do not matter.
  const ExperimentConfig explicit_defaults = parse_config(
      "seed: 1\nshots: 0\nproblem: {pauli: \"1 0 Z\\n\"}\nansatz: {template: hardware-efficient, depth: 1}\n"
      "tasks:\n  - {type: vqe, optimizer: {step: 0.1}}\n");
  CHECK(config_hash(explicit_defaults) == config_hash(yaml));
  ExperimentConfig other = yaml;
  other.seed = 2;
  CHECK(config_hash(other) != config_hash(yaml));
  other = yaml;
  other.out_dir = "/elsewhere";
  CHECK(config_hash(other) == config_hash(yaml));
}

TEST_CASE("run") {
  SUBCASE("minimal VQE on H = Z") {
    const RunReport r = run(parse_config(kMinimal));
    REQUIRE(r.tasks.size() == 1);
    CHECK(std::abs(r.tasks[0]["energy"].get<double>() + 1.0) < 1e-6);
    CHECK(exit_code(r) == 0);
    CHECK(r.config_hash == config_hash(parse_config(kMinimal)));
  }
  SUBCASE("same config and seed give byte-identical outputs") {
    const ExperimentConfig c = parse_config(kIsing2);
    const RunReport a = run(c, 1);
    const RunReport b = run(c, 4);
    CHECK(report_json(a).dump() == report_json(b).dump());
    CHECK(trace_csv(a) == trace_csv(b));
    CHECK(extrapolation_csv(a) == extrapolation_csv(b));
    CHECK(!a.extrapolation.empty());
  }
  SUBCASE("mitigated estimate record") {
    const RunReport r = run(parse_config(kIsing2));
    const auto& m = r.tasks[0]["mitigated"];
    for (const char* key : {"method", "value", "std_error", "gamma", "inputs"}) CHECK(m.contains(key));
    CHECK(m["inputs"].size() == 2);
    const double exact = -std::sqrt(2.0);
    CHECK(std::abs(m["value"].get<double>() - exact) <
          std::abs(r.tasks[0]["noisy_energy"].get<double>() - exact));
  }
  SUBCASE("flagged non-convergence exits 2") {
    const RunReport r = run(parse_config(
        "problem: {model: transverse-ising, n: 2}\nansatz: {depth: 2}\ntasks: [{type: vqe, optimizer: {max_iters: 1}}]\n"));
    CHECK(r.flagged);
    CHECK(exit_code(r) == 2);
    CHECK(r.tasks[0]["flagged"].get<bool>());
  }
  SUBCASE("register caps") {
    CHECK_THROWS_AS(run(parse_config("problem: {model: transverse-ising, n: 20}\ntasks: [{type: vqe}]\n")),
                    CapacityError);
    CHECK_THROWS_AS(run(parse_config("problem: {model: transverse-ising, n: 8}\ntasks: [{type: gibbs}]\n")),
                    CapacityError);
    CHECK_THROWS_AS(oracle(parse_config("problem: {model: transverse-ising, n: 11}\n")), CapacityError);
  }
  SUBCASE("strict noise needs a channel for every gate") {
    ExperimentConfig c = parse_config(
        "problem: {model: transverse-ising, n: 2}\ntasks: [{type: vqe}]\nnoise: {one_qubit: {channel: depolarizing, "
        "p: 0.01}}\n");
    CHECK_NOTHROW(preflight(c));
    RunOptions o;
    o.strict_noise = true;
    CHECK_THROWS_AS(preflight(apply_options(c, o)), std::invalid_argument);
  }
  SUBCASE("seed override") {
    RunOptions o;
    o.seed = 42;
    const ExperimentConfig c = apply_options(parse_config(kMinimal), o);
    CHECK(c.seed == 42);
    CHECK(run(c).seed == 42);
  }
}

TEST_CASE("oracle") {
  SUBCASE("two-qubit Ising gives its four eigenvalues") {
    const double h = 1.0, lambda = 0.5;
    const RunReport r = oracle(parse_config(kIsing2));
    const auto ev = r.tasks[0]["eigenvalues"].get<std::vector<double>>();
    REQUIRE(ev.size() == 4);
    // Swap-symmetric block gives +-sqrt(h^2 + 4 lambda^2) and h; the singlet gives -h.
    const double g = std::sqrt(h * h + 4 * lambda * lambda);
    CHECK(ev[0] == doctest::Approx(-g).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(-h).epsilon(1e-12));
    CHECK(ev[2] == doctest::Approx(h).epsilon(1e-12));
    CHECK(ev[3] == doctest::Approx(g).epsilon(1e-12));
  }
  SUBCASE("evolve task carries a fidelity column") {
    const RunReport r = oracle(parse_config(kIsing2));
    std::size_t rows = 0;
    for (const auto& p : r.trace)
      if (p.task == 1 && p.series == "fidelity") {
        ++rows;
        CHECK(p.y <= 1.0 + 1e-12);
      }
    CHECK(rows == 201);
    CHECK(r.tasks[1].contains("exact_final_energy"));
  }
  SUBCASE("gibbs populations") {
    const RunReport r = oracle(parse_config("problem: {pauli: \"1 0 Z\\n\"}\ntasks: [{type: gibbs, tau: 0.5}]\n"));
    const auto p = r.tasks[0]["populations"].get<std::vector<double>>();
    const double z = std::exp(-1.0) + std::exp(1.0);
    CHECK(p[0] == doctest::Approx(std::exp(-1.0) / z).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(std::exp(1.0) / z).epsilon(1e-12));
  }
  SUBCASE("empty task list") {
    const RunReport r = oracle(parse_config("problem: {model: transverse-ising, n: 2}\n"));
    CHECK(r.tasks.empty());
    CHECK(exit_code(r) == 0);
  }
}
