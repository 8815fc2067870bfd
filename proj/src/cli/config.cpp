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


#include "nisq/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "nisq/core/hamiltonian.hpp"
#include "nisq/noise/lindblad.hpp"
#include "nisq/vqo/sat.hpp"

namespace nisq::cli {

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Where we are in the document, for error messages.
struct Context {
  std::string name;
  std::filesystem::path base;
};

[[noreturn]] void fail(const Context& ctx, const YAML::Mark& mark, const std::string& field, const std::string& what) {
  char pos[64];
  if (mark.is_null())
    pos[0] = '\0';
  else
    std::snprintf(pos, sizeof pos, ":%d:%d", mark.line + 1, mark.column + 1);
  throw ConfigError(ctx.name + pos + ": " + (field.empty() ? "<root>" : field) + ": " + what);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// A mapping whose keys are consumed one by one; done() rejects the rest.
class Fields {
 public:
  Fields(const Context& ctx, const YAML::Node& node, std::string path) : ctx_(ctx), node_(node), path_(std::move(path)) {
    if (!node_.IsMap()) fail(ctx_, node_.Mark(), path_, "expected a mapping");
  }

  bool has(const std::string& key) const { return static_cast<bool>(node_[key]); }

  YAML::Node take(const std::string& key) {
    seen_.insert(key);
    return node_[key];
  }

  std::string field(const std::string& key) const { return join(path_, key); }
  const Context& ctx() const { return ctx_; }
  YAML::Mark mark() const { return node_.Mark(); }

  double number(const std::string& key, double def, double lo = -std::numeric_limits<double>::infinity(),
                double hi = std::numeric_limits<double>::infinity()) {
    const YAML::Node n = take(key);
    if (!n) return def;
    return as_number(n, field(key), lo, hi);
  }

  long long integer(const std::string& key, long long def, long long lo, long long hi) {
    const YAML::Node n = take(key);
    if (!n) return def;
    return as_integer(n, field(key), lo, hi);
  }

  std::string string(const std::string& key, const std::string& def, const std::set<std::string>& allowed = {}) {
    const YAML::Node n = take(key);
    if (!n) return def;
    return as_string(n, field(key), allowed);
  }

  bool boolean(const std::string& key, bool def) {
    const YAML::Node n = take(key);
    if (!n) return def;
    if (!n.IsScalar()) fail(ctx_, n.Mark(), field(key), "expected true or false");
    try {
      return n.as<bool>();
    } catch (const YAML::Exception&) {
      fail(ctx_, n.Mark(), field(key), "expected true or false");
    }
  }

  double as_number(const YAML::Node& n, const std::string& f, double lo, double hi) const {
    if (!n.IsScalar()) fail(ctx_, n.Mark(), f, "expected a number");
    double v = 0.0;
    try {
      v = n.as<double>();
    } catch (const YAML::Exception&) {
      fail(ctx_, n.Mark(), f, "expected a number, got '" + n.Scalar() + "'");
    }
    if (std::isnan(v) || v < lo || v > hi) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "value %.17g outside [%.17g, %.17g]", v, lo, hi);
      fail(ctx_, n.Mark(), f, buf);
    }
    return v;
  }

  long long as_integer(const YAML::Node& n, const std::string& f, long long lo, long long hi) const {
    if (!n.IsScalar()) fail(ctx_, n.Mark(), f, "expected an integer");
    long long v = 0;
    try {
      v = n.as<long long>();
    } catch (const YAML::Exception&) {
      fail(ctx_, n.Mark(), f, "expected an integer, got '" + n.Scalar() + "'");
    }
    if (v < lo || v > hi) fail(ctx_, n.Mark(), f, "value " + std::to_string(v) + " outside [" + std::to_string(lo) +
                                                      ", " + std::to_string(hi) + "]");
    return v;
  }

  std::string as_string(const YAML::Node& n, const std::string& f, const std::set<std::string>& allowed) const {
    if (!n.IsScalar()) fail(ctx_, n.Mark(), f, "expected a string");
    std::string v = n.Scalar();
    if (!allowed.empty() && !allowed.count(v)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail(ctx_, n.Mark(), f, "'" + v + "' is not one of {" + list + "}");
    }
    return v;
  }

  void done() const {
    for (const auto& kv : node_) {
      const std::string key = kv.first.Scalar();
      if (!seen_.count(key)) fail(ctx_, kv.first.Mark(), join(path_, key), "unknown key");
    }
  }

 private:
  const Context& ctx_;
  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

constexpr long long kIntMax = std::numeric_limits<int>::max();

OptimizerConfig parse_optimizer(Fields& parent) {
  OptimizerConfig o;
  const YAML::Node n = parent.take("optimizer");
  if (!n) return o;
  Fields f(parent.ctx(), n, parent.field("optimizer"));
  o.step = f.number("step", o.step, 0.0);
  o.max_iters = static_cast<int>(f.integer("max_iters", o.max_iters, 1, kIntMax));
  o.tolerance = f.number("tolerance", o.tolerance, 0.0);
  o.fd_step = f.number("fd_step", o.fd_step, 0.0);
  o.restarts = static_cast<int>(f.integer("restarts", o.restarts, 0, 1000));
  o.gradient = f.string("gradient", "parameter-shift", {"parameter-shift", "finite-difference"}) == "parameter-shift"
                   ? GradientMode::ParameterShift
                   : GradientMode::FiniteDifference;
  f.done();
  try {
    o.validate();
  } catch (const std::invalid_argument& e) {
    fail(parent.ctx(), n.Mark(), parent.field("optimizer"), e.what());
  }
  return o;
}

// Inline text or a file reference, exactly one of them.
std::string text_or_file(Fields& f, const std::string& key) {
  const bool inline_text = f.has(key);
  const bool file = f.has(key + "_file");
  if (inline_text && file) fail(f.ctx(), f.mark(), f.field(key), "give either '" + key + "' or '" + key + "_file'");
  if (inline_text) return f.string(key, "");
  const YAML::Node n = f.take(key + "_file");
  const std::string rel = f.as_string(n, f.field(key + "_file"), {});
  try {
    return read_file(f.ctx().base / rel);
  } catch (const std::exception& e) {
    fail(f.ctx(), n.Mark(), f.field(key + "_file"), e.what());
  }
}

ProblemConfig parse_problem(const Context& ctx, const YAML::Node& node) {
  Fields f(ctx, node, "problem");
  ProblemConfig p;
  const int sources = int(f.has("model")) + int(f.has("pauli") || f.has("pauli_file")) +
                      int(f.has("dimacs") || f.has("dimacs_file"));
  if (sources != 1) fail(ctx, node.Mark(), "problem", "exactly one of model, pauli(_file), dimacs(_file) is required");
  if (f.has("model")) {
    p.source = ProblemConfig::Source::Model;
    p.model = f.string("model", "", {"transverse-ising"});
    p.n = static_cast<int>(f.integer("n", p.n, 1, 64));
    p.h = f.number("h", p.h);
    p.lambda = f.number("lambda", p.lambda);
  } else if (f.has("pauli") || f.has("pauli_file")) {
    p.source = ProblemConfig::Source::Pauli;
    const YAML::Mark mark = (f.has("pauli") ? node["pauli"] : node["pauli_file"]).Mark();
    p.text = text_or_file(f, "pauli");
    try {
      PauliSum::parse(p.text).require_hermitian("problem");
    } catch (const std::exception& e) {
      fail(ctx, mark, "problem.pauli", e.what());
    }
  } else {
    p.source = ProblemConfig::Source::Dimacs;
    const YAML::Mark mark = (f.has("dimacs") ? node["dimacs"] : node["dimacs_file"]).Mark();
    p.text = text_or_file(f, "dimacs");
    try {
      sat_to_hamiltonian(parse_dimacs(p.text));
    } catch (const std::exception& e) {
      fail(ctx, mark, "problem.dimacs", e.what());
    }
  }
  f.done();
  return p;
}

int default_arity(const std::string& gate) {
  if (gate == "CNOT" || gate == "CZ" || gate == "SWAP") return 2;
  if (gate.size() > 1 && gate[0] == 'R') return static_cast<int>(gate.size()) - 1;
  return 1;
}

ChannelSpec parse_channel(Fields& parent, const YAML::Node& n, const std::string& field, int arity) {
  Fields f(parent.ctx(), n, field);
  ChannelSpec c;
  c.channel = f.string("channel", "", {"identity", "depolarizing", "amplitude_damping", "dephasing", "bit_flip"});
  if (c.channel.empty()) fail(parent.ctx(), n.Mark(), field, "missing 'channel'");
  c.p = f.number("p", 0.0, 0.0, 1.0);
  c.arity = static_cast<int>(f.integer("arity", arity, 1, 2));
  f.done();
  try {
    make_channel(c.channel, c.p, c.arity);
  } catch (const std::exception& e) {
    fail(parent.ctx(), n.Mark(), field, e.what());
  }
  return c;
}

NoiseConfig parse_noise(const Context& ctx, const YAML::Node& node) {
  Fields f(ctx, node, "noise");
  NoiseConfig c;
  if (const YAML::Node n = f.take("one_qubit")) c.one_qubit = parse_channel(f, n, "noise.one_qubit", 1);
  if (const YAML::Node n = f.take("two_qubit")) c.two_qubit = parse_channel(f, n, "noise.two_qubit", 2);
  if (c.one_qubit && c.one_qubit->arity != 1) fail(ctx, node["one_qubit"].Mark(), "noise.one_qubit", "arity must be 1");
  if (c.two_qubit && c.two_qubit->arity != 2) fail(ctx, node["two_qubit"].Mark(), "noise.two_qubit", "arity must be 2");
  if (const YAML::Node g = f.take("gates")) {
    if (!g.IsMap()) fail(ctx, g.Mark(), "noise.gates", "expected a mapping from gate name to channel");
    for (const auto& kv : g) {
      const std::string name = kv.first.Scalar();
      c.gates[name] = parse_channel(f, kv.second, "noise.gates." + name, default_arity(name));
    }
  }
  if (const YAML::Node n = f.take("continuous")) {
    Fields cf(ctx, n, "noise.continuous");
    c.amplitude_damping = cf.number("amplitude_damping", 0.0, 0.0);
    c.dephasing = cf.number("dephasing", 0.0, 0.0);
    c.duration = cf.number("duration", 0.0, 0.0);
    c.dt = cf.number("dt", 0.0, 0.0);
    cf.done();
  }
  if (const YAML::Node r = f.take("reduction")) {
    if (!r.IsSequence()) fail(ctx, r.Mark(), "noise.reduction", "expected a list of divisors");
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::string fi = "noise.reduction[" + std::to_string(i) + "]";
      if (r[i].IsScalar() && (r[i].Scalar() == "inf" || r[i].Scalar() == ".inf"))
        c.reduction.push_back(std::numeric_limits<double>::infinity());
      else
        c.reduction.push_back(f.as_number(r[i], fi, 1.0, std::numeric_limits<double>::infinity()));
    }
  }
  c.strict = f.boolean("strict", false);
  f.done();
  return c;
}

std::vector<Stage> parse_pipeline(const Context& ctx, const YAML::Node& node, int n_qubits) {
  Fields f(ctx, node, "mitigation");
  std::vector<Stage> stages;
  const YAML::Node list = f.take("pipeline");
  f.done();
  if (!list || list.IsNull()) return stages;
  if (!list.IsSequence()) fail(ctx, list.Mark(), "mitigation.pipeline", "expected a list of stages");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string field = "mitigation.pipeline[" + std::to_string(i) + "]";
    const YAML::Node item = list[i];
    if (!item.IsMap() || item.size() != 1) fail(ctx, item.Mark(), field, "each stage is a single-key mapping");
    const std::string kind = item.begin()->first.Scalar();
    const YAML::Node body = item.begin()->second;
    const std::string bf = field + "." + kind;
    if (kind == "boost") {
      if (!body.IsSequence()) fail(ctx, body.Mark(), bf, "expected a list of boost factors");
      std::vector<double> alphas;
      for (std::size_t k = 0; k < body.size(); ++k)
        alphas.push_back(f.as_number(body[k], bf + "[" + std::to_string(k) + "]", 1.0,
                                     std::numeric_limits<double>::infinity()));
      stages.push_back(Stage::boost(std::move(alphas)));
    } else if (kind == "quasi_probability") {
      const std::string scope = f.as_string(body, bf, {"full", "partial"});
      stages.push_back(Stage::quasi_probability(scope == "full" ? QpScope::Full : QpScope::Partial));
    } else if (kind == "symmetry") {
      Fields sf(ctx, body, bf);
      SymmetryOperator sym;
      const std::string pauli = sf.string("pauli", "");
      try {
        sym.pauli = PauliString::parse(pauli);
      } catch (const std::exception& e) {
        fail(ctx, body.Mark(), sf.field("pauli"), e.what());
      }
      if (sym.pauli.qubits() != n_qubits)
        fail(ctx, body.Mark(), sf.field("pauli"), "symmetry acts on " + std::to_string(sym.pauli.qubits()) +
                                                     " qubits, the problem has " + std::to_string(n_qubits));
      sym.sector = static_cast<int>(sf.integer("sector", 1, -1, 1));
      try {
        sym.validate();
      } catch (const std::exception& e) {
        fail(ctx, body.Mark(), bf, e.what());
      }
      const std::string mode = sf.string("mode", "postselect", {"postselect", "postprocess"});
      sf.done();
      stages.push_back(Stage::verify(sym, mode == "postselect" ? VerifyMode::Postselect : VerifyMode::Postprocess));
    } else if (kind == "extrapolate") {
      std::string method;
      double mu = -1.0;
      const std::set<std::string> kinds{"linear", "richardson", "exponential", "hyperbolic"};
      if (body.IsScalar()) {
        method = f.as_string(body, bf, kinds);
      } else {
        Fields ef(ctx, body, bf);
        method = ef.string("kind", "linear", kinds);
        mu = ef.number("mu", -1.0);
        ef.done();
      }
      const ExtrapolationKind k = method == "linear"        ? ExtrapolationKind::Linear
                                  : method == "richardson"  ? ExtrapolationKind::Richardson
                                  : method == "exponential" ? ExtrapolationKind::Exponential
                                                            : ExtrapolationKind::Hyperbolic;
      stages.push_back(Stage::extrapolate(k, mu));
    } else {
      fail(ctx, item.begin()->first.Mark(), field + "." + kind, "unknown stage");
    }
  }
  try {
    validate_pipeline(stages);
  } catch (const std::invalid_argument& e) {
    fail(ctx, list.Mark(), "mitigation.pipeline", e.what());
  }
  return stages;
}

TaskConfig parse_task(const Context& ctx, const YAML::Node& node, const std::string& field, int n_qubits) {
  Fields f(ctx, node, field);
  if (!f.has("type")) fail(ctx, node.Mark(), field, "missing 'type'");
  const std::string type = f.string("type", "", {"vqe", "qaoa", "spectrum", "evolve", "gibbs", "linear-algebra"});
  TaskConfig out;
  if (type == "vqe") {
    VqeTask t;
    t.optimizer = parse_optimizer(f);
    out = t;
  } else if (type == "qaoa") {
    QaoaTask t;
    t.depth = static_cast<int>(f.integer("depth", t.depth, 1, 100));
    t.schedule = f.string("schedule", t.schedule, {"fixed", "morphing"});
    t.morph_steps = static_cast<int>(f.integer("morph_steps", t.morph_steps, 1, 10000));
    t.optimizer = parse_optimizer(f);
    out = t;
  } else if (type == "spectrum") {
    SpectrumTask t;
    t.method = f.string("method", t.method, {"overlap", "ssvqe"});
    t.levels = static_cast<int>(f.integer("levels", t.levels, 1, 1LL << std::min(n_qubits, 20)));
    t.penalty = f.number("penalty", t.penalty);
    t.optimizer = parse_optimizer(f);
    out = t;
  } else if (type == "evolve") {
    EvolveTask t;
    t.mode = f.string("mode", t.mode, {"real", "imaginary"});
    t.time = f.number("time", t.time, 0.0);
    t.dt = f.number("dt", t.dt, 0.0);
    if (!(t.dt > 0.0)) fail(ctx, node.Mark(), field + ".dt", "must be positive");
    t.init = f.string("init", t.init, {"zeros", "random"});
    t.residual_budget = f.number("residual_budget", t.residual_budget);
    out = t;
  } else if (type == "gibbs") {
    GibbsTask t;
    t.tau = f.number("tau", t.tau, 0.0);
    t.dt = f.number("dt", t.dt, 0.0);
    if (!(t.dt > 0.0)) fail(ctx, node.Mark(), field + ".dt", "must be positive");
    t.max_weight = static_cast<int>(f.integer("max_weight", t.max_weight, 0, 64));
    out = t;
  } else {
    LinearAlgebraTask t;
    t.task = f.string("task", t.task, {"solve", "multiply"});
    t.locality = f.string("locality", t.locality, {"global", "local"});
    if (t.task == "multiply" && t.locality == "local")
      fail(ctx, node.Mark(), field + ".locality", "the local cost is defined for the solve task only");
    if (!f.has("matrix")) fail(ctx, node.Mark(), field + ".matrix", "missing operator M");
    const YAML::Mark mark = node["matrix"].Mark();
    t.matrix = f.string("matrix", "");
    try {
      const PauliSum m = PauliSum::parse(t.matrix);
      if (m.qubits() != n_qubits) throw std::invalid_argument("M acts on " + std::to_string(m.qubits()) + " qubits");
    } catch (const std::exception& e) {
      fail(ctx, mark, field + ".matrix", e.what());
    }
    t.v0 = f.string("v0", t.v0, {"zero", "plus"});
    t.steps = static_cast<int>(f.integer("steps", t.steps, 0, 100000));
    t.tolerance = f.number("tolerance", t.tolerance, 0.0);
    t.optimizer = parse_optimizer(f);
    out = t;
  }
  f.done();
  return out;
}

ExperimentConfig parse_root(const Context& ctx, const YAML::Node& root) {
  if (!root || root.IsNull()) fail(ctx, YAML::Mark::null_mark(), "", "empty config");
  Fields f(ctx, root, "");
  ExperimentConfig c;
  const YAML::Node problem = f.take("problem");
  if (!problem) fail(ctx, root.Mark(), "problem", "missing");
  c.problem = parse_problem(ctx, problem);
  const int n = problem_qubits(c.problem);
  if (const YAML::Node a = f.take("ansatz")) {
    Fields af(ctx, a, "ansatz");
    c.ansatz.templ = af.string("template", c.ansatz.templ, {"hardware-efficient"});
    c.ansatz.depth = static_cast<int>(af.integer("depth", c.ansatz.depth, 0, 1000));
    af.done();
  }
  if (const YAML::Node t = f.take("tasks")) {
    if (!t.IsSequence()) fail(ctx, t.Mark(), "tasks", "expected a list");
    for (std::size_t i = 0; i < t.size(); ++i) c.tasks.push_back(parse_task(ctx, t[i], "tasks[" + std::to_string(i) + "]", n));
  }
  if (const YAML::Node nz = f.take("noise")) c.noise = parse_noise(ctx, nz);
  if (const YAML::Node m = f.take("mitigation")) c.pipeline = parse_pipeline(ctx, m, n);
  if (c.noise && !c.noise->reduction.empty() && static_cast<int>(c.noise->reduction.size()) != n)
    fail(ctx, root["noise"].Mark(), "noise.reduction", "needs one divisor per qubit");
  c.shots = static_cast<std::uint64_t>(f.integer("shots", 0, 0, 1LL << 40));
  c.seed = static_cast<std::uint64_t>(f.integer("seed", 0, 0, std::numeric_limits<long long>::max()));
  if (const YAML::Node o = f.take("outputs")) {
    Fields of(ctx, o, "outputs");
    c.out_dir = of.string("dir", c.out_dir);
    of.done();
  }
  f.done();
  return c;
}

nlohmann::json optimizer_json(const OptimizerConfig& o) {
  return {{"step", o.step},
          {"max_iters", o.max_iters},
          {"tolerance", o.tolerance},
          {"fd_step", o.fd_step},
          {"restarts", o.restarts},
          {"gradient", o.gradient == GradientMode::ParameterShift ? "parameter-shift" : "finite-difference"}};
}

nlohmann::json channel_json(const ChannelSpec& c) { return {{"channel", c.channel}, {"p", c.p}, {"arity", c.arity}}; }

nlohmann::json task_json(const TaskConfig& task) {
  nlohmann::json j = std::visit(
      [](const auto& t) -> nlohmann::json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, VqeTask>) {
          return {{"optimizer", optimizer_json(t.optimizer)}};
        } else if constexpr (std::is_same_v<T, QaoaTask>) {
          return {{"depth", t.depth}, {"schedule", t.schedule}, {"morph_steps", t.morph_steps},
                  {"optimizer", optimizer_json(t.optimizer)}};
        } else if constexpr (std::is_same_v<T, SpectrumTask>) {
          return {{"method", t.method}, {"levels", t.levels}, {"penalty", t.penalty},
                  {"optimizer", optimizer_json(t.optimizer)}};
        } else if constexpr (std::is_same_v<T, EvolveTask>) {
          return {{"mode", t.mode}, {"time", t.time}, {"dt", t.dt}, {"init", t.init},
                  {"residual_budget", t.residual_budget}};
        } else if constexpr (std::is_same_v<T, GibbsTask>) {
          return {{"tau", t.tau}, {"dt", t.dt}, {"max_weight", t.max_weight}};
        } else {
          return {{"task", t.task}, {"locality", t.locality}, {"matrix", t.matrix}, {"v0", t.v0},
                  {"steps", t.steps}, {"tolerance", t.tolerance}, {"optimizer", optimizer_json(t.optimizer)}};
        }
      },
      task);
  j["type"] = task_name(task);
  return j;
}

nlohmann::json stage_json(const Stage& s) {
  switch (s.kind) {
    case StageKind::Boost: return {{"boost", s.alphas}};
    case StageKind::QuasiProbability: return {{"quasi_probability", s.scope == QpScope::Full ? "full" : "partial"}};
    case StageKind::Symmetry:
      return {{"symmetry",
               {{"pauli", s.symmetry->pauli.to_string()},
                {"sector", s.symmetry->sector},
                {"mode", s.mode == VerifyMode::Postselect ? "postselect" : "postprocess"}}}};
    case StageKind::Extrapolate: return {{"extrapolate", {{"kind", to_string(s.extrapolation)}, {"mu", s.mu}}}};
  }
  return {};
}

// Infinite reduction divisors have no JSON number.
nlohmann::json reduction_json(const std::vector<double>& r) {
  nlohmann::json j = nlohmann::json::array();
  for (double h : r) j.push_back(std::isinf(h) ? nlohmann::json("inf") : nlohmann::json(h));
  return j;
}

}  // namespace

std::string task_name(const TaskConfig& task) {
  static const char* names[] = {"vqe", "qaoa", "spectrum", "evolve", "gibbs", "linear-algebra"};
  return names[task.index()];
}

ExperimentConfig parse_config(const std::string& text, const std::string& name, const std::string& base_dir) {
  Context ctx{name, base_dir};
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    fail(ctx, e.mark, "", "parse error: " + e.msg);
  }
  return parse_root(ctx, root);
}

ExperimentConfig load_config(const std::string& path) {
  const std::filesystem::path p(path);
  std::string text;
  try {
    text = read_file(p);
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  const std::filesystem::path base = p.has_parent_path() ? p.parent_path() : std::filesystem::path(".");
  return parse_config(text, path, base.string());
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  nlohmann::json problem;
  switch (c.problem.source) {
    case ProblemConfig::Source::Model:
      problem = {{"model", c.problem.model}, {"n", c.problem.n}, {"h", c.problem.h}, {"lambda", c.problem.lambda}};
      break;
    case ProblemConfig::Source::Pauli: problem = {{"pauli", c.problem.text}}; break;
    case ProblemConfig::Source::Dimacs: problem = {{"dimacs", c.problem.text}}; break;
  }
  j["problem"] = problem;
  j["ansatz"] = {{"template", c.ansatz.templ}, {"depth", c.ansatz.depth}};
  j["tasks"] = nlohmann::json::array();
  for (const auto& t : c.tasks) j["tasks"].push_back(task_json(t));
  if (c.noise) {
    const NoiseConfig& nz = *c.noise;
    nlohmann::json jn;
    jn["one_qubit"] = nz.one_qubit ? channel_json(*nz.one_qubit) : nlohmann::json();
    jn["two_qubit"] = nz.two_qubit ? channel_json(*nz.two_qubit) : nlohmann::json();
    jn["gates"] = nlohmann::json::object();
    for (const auto& [name, spec] : nz.gates) jn["gates"][name] = channel_json(spec);
    jn["continuous"] = {{"amplitude_damping", nz.amplitude_damping}, {"dephasing", nz.dephasing},
                        {"duration", nz.duration}, {"dt", nz.dt}};
    jn["reduction"] = reduction_json(nz.reduction);
    jn["strict"] = nz.strict;
    j["noise"] = jn;
  } else {
    j["noise"] = nullptr;
  }
  j["mitigation"] = nlohmann::json::array();
  for (const auto& s : c.pipeline) j["mitigation"].push_back(stage_json(s));
  j["shots"] = c.shots;
  j["seed"] = c.seed;
  return j;
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string s = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

PauliSum problem_hamiltonian(const ProblemConfig& p) {
  switch (p.source) {
    case ProblemConfig::Source::Model: return transverse_ising(p.n, p.h, p.lambda);
    case ProblemConfig::Source::Pauli: return PauliSum::parse(p.text);
    case ProblemConfig::Source::Dimacs: return sat_to_hamiltonian(parse_dimacs(p.text));
  }
  throw std::logic_error("problem_hamiltonian: bad source");
}

int problem_qubits(const ProblemConfig& p) {
  switch (p.source) {
    case ProblemConfig::Source::Model: return p.n;
    case ProblemConfig::Source::Pauli: return PauliSum::parse(p.text).qubits();
    case ProblemConfig::Source::Dimacs: return parse_dimacs(p.text).variables;
  }
  throw std::logic_error("problem_qubits: bad source");
}

NoiseModel build_noise_model(const NoiseConfig& c, int n_qubits) {
  NoiseModel m;
  if (c.one_qubit) m.one_qubit = make_channel(c.one_qubit->channel, c.one_qubit->p, 1);
  if (c.two_qubit) m.two_qubit = make_channel(c.two_qubit->channel, c.two_qubit->p, 2);
  for (const auto& [name, spec] : c.gates) m.by_name.emplace(name, make_channel(spec.channel, spec.p, spec.arity));
  if (c.duration > 0.0 && (c.amplitude_damping > 0.0 || c.dephasing > 0.0)) {
    ContinuousNoise cont;
    if (c.amplitude_damping > 0.0) cont.jumps.push_back(std::sqrt(c.amplitude_damping) * sigma_minus());
    if (c.dephasing > 0.0) cont.jumps.push_back(std::sqrt(c.dephasing) * gates::z());
    cont.duration = c.duration;
    cont.dt = c.dt;
    m.continuous = cont;
  }
  if (!c.reduction.empty()) {
    if (static_cast<int>(c.reduction.size()) != n_qubits)
      throw std::invalid_argument("noise: reduction needs one divisor per qubit");
    m.reduction = c.reduction;
  }
  m.strict = c.strict;
  return m;
}

}  // namespace nisq::cli
