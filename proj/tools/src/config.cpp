#include "fredholm_cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "fredholm/errors.hpp"
#include "fredholm/io.hpp"

namespace fredholm::cli {
namespace {

const std::vector<std::string> kPresets = {"toy-reference-sweep", "toy-lambda-sweep", "kl-expansion", "gp-ssm",
                                           "rate-N",              "rate-gamma",       "custom"};
const std::vector<std::string> kProblemKinds = {"gaussian-toy", "exponential-kl", "squared-exponential-kl", "gp-ssm",
                                                "constant-kernel"};
const std::vector<std::string> kSweepParameters = {"alpha", "eta",     "lambda",  "beta",
                                                   "particles", "step", "horizon", "reference"};

bool one_of(const std::string& value, const std::vector<std::string>& allowed) {
  return std::find(allowed.begin(), allowed.end(), value) != allowed.end();
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::uint64_t count) {
  std::vector<std::uint64_t> out(count);
  for (std::uint64_t i = 0; i < count; ++i) out[i] = first + i;
  return out;
}

ReferenceSpec gaussian_ref(std::string name, double mean, double var) { return {std::move(name), "gaussian", mean, var}; }

// ---------------------------------------------------------------------------
// YAML reading

std::string where(const YAML::Node& node, std::string_view key) {
  const auto mark = node.Mark();
  std::string out(key);
  if (!mark.is_null()) out += " (line " + std::to_string(mark.line + 1) + ")";
  return out;
}

void require_map(const YAML::Node& node, std::string_view key) {
  if (!node.IsMap()) throw ConfigError(where(node, key) + ": expected a mapping");
}

void check_keys(const YAML::Node& node, std::string_view section, std::initializer_list<std::string_view> allowed) {
  require_map(node, section);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(where(kv.first, std::string(section) + "." + key) + ": unknown key");
    }
  }
}

std::string scalar(const YAML::Node& node, std::string_view key) {
  if (!node.IsScalar()) throw ConfigError(where(node, key) + ": expected a scalar");
  return node.Scalar();
}

double to_double(const YAML::Node& node, std::string_view key) {
  try {
    return parse_double(scalar(node, key));
  } catch (const IoError&) {
    throw ConfigError(where(node, key) + ": expected a number, got '" + node.Scalar() + "'");
  }
}

std::uint64_t to_unsigned(const YAML::Node& node, std::string_view key) {
  const double v = to_double(node, key);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15) {
    throw ConfigError(where(node, key) + ": expected a non-negative integer");
  }
  return static_cast<std::uint64_t>(v);
}

bool to_bool(const YAML::Node& node, std::string_view key) {
  const std::string s = scalar(node, key);
  if (s == "true" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "no" || s == "off") return false;
  throw ConfigError(where(node, key) + ": expected true or false");
}

void read(const YAML::Node& parent, const char* key, double& out) {
  if (const auto n = parent[key]) out = to_double(n, key);
}
void read(const YAML::Node& parent, const char* key, std::size_t& out) {
  if (const auto n = parent[key]) out = static_cast<std::size_t>(to_unsigned(n, key));
}
void read(const YAML::Node& parent, const char* key, int& out) {
  if (const auto n = parent[key]) out = static_cast<int>(to_unsigned(n, key));
}
void read(const YAML::Node& parent, const char* key, bool& out) {
  if (const auto n = parent[key]) out = to_bool(n, key);
}
void read(const YAML::Node& parent, const char* key, std::string& out) {
  if (const auto n = parent[key]) out = scalar(n, key);
}
void read(const YAML::Node& parent, const char* key, std::filesystem::path& out) {
  if (const auto n = parent[key]) out = scalar(n, key);
}

std::vector<double> read_numbers(const YAML::Node& node, std::string_view key) {
  if (!node.IsSequence()) throw ConfigError(where(node, key) + ": expected a list");
  std::vector<double> out;
  for (const auto& item : node) out.push_back(to_double(item, key));
  return out;
}

ReferenceSpec read_reference(const YAML::Node& node, ReferenceSpec base) {
  check_keys(node, "reference", {"name", "kind", "mean", "var"});
  read(node, "name", base.name);
  read(node, "kind", base.kind);
  read(node, "mean", base.mean);
  read(node, "var", base.var);
  return base;
}

void read_problem(const YAML::Node& node, ProblemSpec& p) {
  check_keys(node, "problem", {"kind", "lambda", "beta", "dim", "kernel_value", "gp"});
  read(node, "kind", p.kind);
  read(node, "lambda", p.lambda);
  read(node, "beta", p.beta);
  read(node, "dim", p.dim);
  read(node, "kernel_value", p.kernel_value);
  if (const auto gp = node["gp"]) {
    check_keys(gp, "problem.gp",
               {"training_points", "length_scale_sq", "signal_var", "training_data", "data_seed",
                "finite_difference_gradients"});
    read(gp, "training_points", p.gp.training_points);
    read(gp, "length_scale_sq", p.gp.length_scale_sq);
    read(gp, "signal_var", p.gp.signal_var);
    read(gp, "training_data", p.gp.training_data);
    read(gp, "finite_difference_gradients", p.gp.finite_difference_gradients);
    if (const auto s = gp["data_seed"]) {
      if (s.IsNull() || (s.IsScalar() && s.Scalar() == "run")) {
        p.gp.data_seed.reset();
      } else {
        p.gp.data_seed = to_unsigned(s, "data_seed");
      }
    }
  }
}

void read_sim(const YAML::Node& node, SimSpec& s) {
  check_keys(node, "sim", {"particles", "step", "horizon", "duration", "init", "stopping", "snapshot_every"});
  read(node, "particles", s.particles);
  if (const auto step = node["step"]) {
    if (step.IsScalar() && step.Scalar() == "1/N") {
      s.step.reset();
    } else {
      s.step = to_double(step, "step");
    }
  }
  read(node, "horizon", s.horizon);
  if (const auto d = node["duration"]) {
    if (d.IsNull() || (d.IsScalar() && d.Scalar() == "none")) {
      s.duration.reset();
    } else {
      s.duration = to_double(d, "duration");
    }
  }
  if (const auto init = node["init"]) {
    check_keys(init, "sim.init", {"kind", "mean", "sd", "lo", "hi", "path"});
    read(init, "kind", s.init.kind);
    read(init, "mean", s.init.mean);
    read(init, "sd", s.init.sd);
    read(init, "lo", s.init.lo);
    read(init, "hi", s.init.hi);
    read(init, "path", s.init.path);
  }
  if (const auto stop = node["stopping"]) {
    if (stop.IsNull() || (stop.IsScalar() && stop.Scalar() == "none")) {
      s.stopping.reset();
    } else {
      check_keys(stop, "sim.stopping", {"window", "rel_tol"});
      StoppingRule rule = s.stopping.value_or(StoppingRule{});
      read(stop, "window", rule.window);
      read(stop, "rel_tol", rule.rel_tol);
      s.stopping = rule;
    }
  }
  read(node, "snapshot_every", s.snapshot_every);
}

std::vector<SweepAxis> read_sweep(const YAML::Node& node) {
  if (!node.IsSequence()) throw ConfigError(where(node, "sweep") + ": expected a list of axes");
  std::vector<SweepAxis> out;
  for (const auto& axis_node : node) {
    check_keys(axis_node, "sweep[]", {"parameter", "values", "references"});
    SweepAxis axis;
    read(axis_node, "parameter", axis.parameter);
    if (const auto v = axis_node["values"]) axis.values = read_numbers(v, "values");
    if (const auto refs = axis_node["references"]) {
      if (!refs.IsSequence()) throw ConfigError(where(refs, "references") + ": expected a list");
      for (const auto& r : refs) axis.references.push_back(read_reference(r, ReferenceSpec{}));
    }
    out.push_back(std::move(axis));
  }
  return out;
}

void apply(const YAML::Node& root, ExperimentConfig& c) {
  check_keys(root, "config",
             {"experiment", "problem", "regularization", "sim", "grid", "seeds", "sweep", "baseline", "output",
              "threads", "output_dir"});
  read(root, "experiment", c.experiment);
  if (const auto p = root["problem"]) read_problem(p, c.problem);
  if (const auto reg = root["regularization"]) {
    check_keys(reg, "regularization", {"alpha", "eta", "reference"});
    read(reg, "alpha", c.alpha);
    read(reg, "eta", c.eta);
    if (const auto r = reg["reference"]) c.reference = read_reference(r, c.reference);
  }
  if (const auto sim = root["sim"]) read_sim(sim, c.sim);
  if (const auto grid = root["grid"]) {
    check_keys(grid, "grid", {"lo", "hi", "points"});
    read(grid, "lo", c.grid.lo);
    read(grid, "hi", c.grid.hi);
    read(grid, "points", c.grid.points);
  }
  if (const auto seeds = root["seeds"]) {
    c.seeds.clear();
    if (seeds.IsMap()) {
      check_keys(seeds, "seeds", {"first", "count"});
      std::uint64_t first = 1, count = 1;
      if (const auto f = seeds["first"]) first = to_unsigned(f, "seeds.first");
      if (const auto n = seeds["count"]) count = to_unsigned(n, "seeds.count");
      c.seeds = seed_range(first, count);
    } else if (seeds.IsSequence()) {
      for (const auto& s : seeds) c.seeds.push_back(to_unsigned(s, "seeds"));
    } else {
      c.seeds.push_back(to_unsigned(seeds, "seeds"));
    }
  }
  if (const auto sweep = root["sweep"]) c.sweep = sweep.IsNull() ? std::vector<SweepAxis>{} : read_sweep(sweep);
  if (const auto b = root["baseline"]) {
    check_keys(b, "baseline", {"a", "b", "n", "method"});
    read(b, "a", c.baseline.a);
    read(b, "b", c.baseline.b);
    read(b, "n", c.baseline.n);
    read(b, "method", c.baseline.method);
  }
  if (const auto o = root["output"]) {
    check_keys(o, "output", {"all_snapshots", "renormalize", "invariance_samples"});
    read(o, "all_snapshots", c.output.all_snapshots);
    read(o, "renormalize", c.output.renormalize);
    read(o, "invariance_samples", c.output.invariance_samples);
  }
  read(root, "threads", c.threads);
  read(root, "output_dir", c.output_dir);
}

// ---------------------------------------------------------------------------
// YAML writing

std::string num(double v) { return format_double(v); }

void emit_reference(YAML::Emitter& e, const ReferenceSpec& r) {
  e << YAML::BeginMap;
  if (!r.name.empty()) e << YAML::Key << "name" << YAML::Value << r.name;
  e << YAML::Key << "kind" << YAML::Value << r.kind;
  e << YAML::Key << "mean" << YAML::Value << num(r.mean);
  e << YAML::Key << "var" << YAML::Value << num(r.var);
  e << YAML::EndMap;
}

}  // namespace

std::string ReferenceSpec::label() const {
  if (!name.empty()) return name;
  if (kind == "gaussian") return "N(" + format_double(mean) + ";" + format_double(var) + ")";
  return kind;
}

double SimSpec::resolved_step() const { return step ? *step : 1.0 / static_cast<double>(particles); }

std::size_t SimSpec::resolved_horizon() const {
  if (!duration) return horizon;
  return static_cast<std::size_t>(std::llround(*duration / resolved_step()));
}

void ExperimentConfig::validate() const {
  if (!one_of(experiment, kPresets)) throw ConfigError("unknown experiment '" + experiment + "'; expected one of " + join(kPresets));
  if (!one_of(problem.kind, kProblemKinds)) {
    throw ConfigError("unknown problem kind '" + problem.kind + "'; expected one of " + join(kProblemKinds));
  }
  if (problem.dim < 1) throw ConfigError("problem.dim must be >= 1");
  if (problem.kind != "gaussian-toy" && problem.dim != 1) throw ConfigError(problem.kind + " is one-dimensional");
  if (problem.kind == "gaussian-toy" && !(problem.beta > 0.0)) throw ConfigError("problem.beta must be > 0");
  if (problem.kind == "gaussian-toy" && !(problem.lambda > 0.0 && problem.lambda < 1.0)) {
    throw ConfigError("problem.lambda must lie in (0, 1) for gaussian-toy");
  }
  if (problem.kind == "constant-kernel" && !(problem.kernel_value > 0.0)) {
    throw ConfigError("problem.kernel_value must be > 0");
  }
  if (problem.kind == "gp-ssm") {
    if (!problem.gp.training_data.empty() && !std::filesystem::exists(problem.gp.training_data)) {
      throw ConfigError("training data file not found: " + problem.gp.training_data.string());
    }
    if (problem.gp.training_data.empty() && problem.gp.training_points == 0) {
      throw ConfigError("problem.gp.training_points must be >= 1");
    }
  }
  if (!(alpha >= 0.0) || !(eta >= 0.0)) throw ConfigError("alpha and eta must be >= 0");
  if (!one_of(reference.kind, {"gaussian", "flat", "none"})) throw ConfigError("reference kind must be gaussian, flat or none");
  if (sim.particles == 0) throw ConfigError("sim.particles must be >= 1");
  if (sim.step && !(*sim.step > 0.0)) throw ConfigError("sim.step must be > 0 or \"1/N\"");
  if (sim.duration && !(*sim.duration >= 0.0)) throw ConfigError("sim.duration must be >= 0");
  if (sim.snapshot_every == 0) throw ConfigError("sim.snapshot_every must be >= 1");
  if (!one_of(sim.init.kind, {"gaussian", "uniform", "samples"})) {
    throw ConfigError("sim.init.kind must be gaussian, uniform or samples");
  }
  if (sim.init.kind == "samples" && !std::filesystem::exists(sim.init.path)) {
    throw ConfigError("initial samples file not found: " + sim.init.path.string());
  }
  if (sim.stopping && (sim.stopping->window < 1 || !(sim.stopping->rel_tol > 0.0))) {
    throw ConfigError("sim.stopping needs window >= 1 and rel_tol > 0");
  }
  if (grid.points < 2 || !(grid.hi > grid.lo)) throw ConfigError("grid needs lo < hi and points >= 2");
  if (seeds.empty()) throw ConfigError("seeds must be nonempty");
  for (const auto& axis : sweep) {
    if (!one_of(axis.parameter, kSweepParameters)) {
      throw ConfigError("unknown sweep parameter '" + axis.parameter + "'; expected one of " + join(kSweepParameters));
    }
    if (axis.size() == 0) throw ConfigError("sweep axis '" + axis.parameter + "' has no values");
  }
  if (baseline.n < 2 || !(baseline.b > baseline.a)) throw ConfigError("baseline needs a < b and n >= 2");
  if (!one_of(baseline.method, {"auto", "dense", "power", "resolve", "project"})) {
    throw ConfigError("baseline.method must be auto, dense, power, resolve or project");
  }
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

const std::vector<std::string>& preset_names() { return kPresets; }

ExperimentConfig preset(std::string_view name) {
  ExperimentConfig c;
  c.experiment = std::string(name);
  const ReferenceSpec target = gaussian_ref("target", 0.0, 1.0);
  const ReferenceSpec diffuse = gaussian_ref("diffuse", 0.0, 4.0);
  const ReferenceSpec concentrated = gaussian_ref("concentrated", 0.0, 0.01);

  if (name == "custom") return c;

  if (name == "toy-reference-sweep") {
    c.reference = target;
    c.seeds = seed_range(1, 10);
    SweepAxis refs{"reference", {}, {target, diffuse, concentrated, {"improper", "flat", 0.0, 1.0}}};
    c.sweep = {{"alpha", {0.0, 0.05, 0.1, 0.25, 0.5, 0.75, 1.0}, {}}, std::move(refs)};
  } else if (name == "toy-lambda-sweep") {
    c.reference = target;
    c.seeds = seed_range(1, 10);
    c.sweep = {{"lambda", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}, {}},
               {"reference", {}, {target, diffuse, concentrated}}};
  } else if (name == "kl-expansion") {
    c.problem.kind = "exponential-kl";
    c.alpha = 1e-2;
    c.reference = gaussian_ref("", 0.0, 0.05 * 0.05);
    c.sim.particles = 500;
    c.sim.step.reset();
    c.sim.horizon = 400;
    c.sim.init = {"gaussian", 0.0, 0.05, -1.0, 1.0, {}};
    c.sim.snapshot_every = 20;
    c.grid = {-1.0, 1.0, 1001};
    c.baseline = {-1.0, 1.0, 500, "auto"};
    c.seeds = seed_range(1, 5);
  } else if (name == "gp-ssm") {
    c.problem.kind = "gp-ssm";
    c.alpha = 1e-3;
    c.reference = gaussian_ref("", 0.0, 1.0);
    c.sim.particles = 200;
    c.sim.step.reset();
    c.sim.horizon = 100;
    c.sim.init = {"gaussian", 0.0, 1.0, -1.0, 1.0, {}};
    c.grid = {-20.0, 10.0, 1501};
    c.baseline = {-20.0, 10.0, 500, "resolve"};
  } else if (name == "rate-N") {
    c.alpha = 0.1;
    c.reference = target;
    c.seeds = seed_range(1, 10);
    c.sweep = {{"particles", {50, 100, 200, 500, 1000}, {}}};
  } else if (name == "rate-gamma") {
    c.alpha = 0.1;
    c.reference = target;
    c.sim.particles = 500;
    c.sim.duration = 2.0;
    c.seeds = seed_range(1, 10);
    c.sweep = {{"step", {0.01, 0.02, 0.05, 0.1}, {}}};
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'; expected one of " + join(kPresets));
  }
  return c;
}

ExperimentConfig parse_config(std::string_view text, const std::optional<std::string>& base_preset) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("YAML syntax error: ") + e.what());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);

  std::string base = base_preset.value_or("custom");
  if (!base_preset) {
    if (const auto e = root["experiment"]) base = scalar(e, "experiment");
  }
  ExperimentConfig c = preset(base);
  try {
    apply(root, c);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, const std::optional<std::string>& base_preset) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), base_preset);
}

std::string to_yaml(const ExperimentConfig& c) {
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "experiment" << YAML::Value << c.experiment;

  e << YAML::Key << "problem" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "kind" << YAML::Value << c.problem.kind;
  e << YAML::Key << "lambda" << YAML::Value << num(c.problem.lambda);
  e << YAML::Key << "beta" << YAML::Value << num(c.problem.beta);
  e << YAML::Key << "dim" << YAML::Value << c.problem.dim;
  e << YAML::Key << "kernel_value" << YAML::Value << num(c.problem.kernel_value);
  e << YAML::Key << "gp" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "training_points" << YAML::Value << c.problem.gp.training_points;
  e << YAML::Key << "length_scale_sq" << YAML::Value << num(c.problem.gp.length_scale_sq);
  e << YAML::Key << "signal_var" << YAML::Value << num(c.problem.gp.signal_var);
  if (!c.problem.gp.training_data.empty()) {
    e << YAML::Key << "training_data" << YAML::Value << c.problem.gp.training_data.string();
  }
  e << YAML::Key << "data_seed" << YAML::Value
    << (c.problem.gp.data_seed ? std::to_string(*c.problem.gp.data_seed) : std::string("run"));
  e << YAML::Key << "finite_difference_gradients" << YAML::Value << c.problem.gp.finite_difference_gradients;
  e << YAML::EndMap << YAML::EndMap;

  e << YAML::Key << "regularization" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "alpha" << YAML::Value << num(c.alpha);
  e << YAML::Key << "eta" << YAML::Value << num(c.eta);
  e << YAML::Key << "reference" << YAML::Value;
  emit_reference(e, c.reference);
  e << YAML::EndMap;

  e << YAML::Key << "sim" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "particles" << YAML::Value << c.sim.particles;
  e << YAML::Key << "step" << YAML::Value << (c.sim.step ? num(*c.sim.step) : std::string("1/N"));
  e << YAML::Key << "horizon" << YAML::Value << c.sim.horizon;
  e << YAML::Key << "duration" << YAML::Value << (c.sim.duration ? num(*c.sim.duration) : std::string("none"));
  e << YAML::Key << "init" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "kind" << YAML::Value << c.sim.init.kind;
  e << YAML::Key << "mean" << YAML::Value << num(c.sim.init.mean);
  e << YAML::Key << "sd" << YAML::Value << num(c.sim.init.sd);
  e << YAML::Key << "lo" << YAML::Value << num(c.sim.init.lo);
  e << YAML::Key << "hi" << YAML::Value << num(c.sim.init.hi);
  if (!c.sim.init.path.empty()) e << YAML::Key << "path" << YAML::Value << c.sim.init.path.string();
  e << YAML::EndMap;
  if (c.sim.stopping) {
    e << YAML::Key << "stopping" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "window" << YAML::Value << c.sim.stopping->window;
    e << YAML::Key << "rel_tol" << YAML::Value << num(c.sim.stopping->rel_tol);
    e << YAML::EndMap;
  } else {
    e << YAML::Key << "stopping" << YAML::Value << "none";
  }
  e << YAML::Key << "snapshot_every" << YAML::Value << c.sim.snapshot_every;
  e << YAML::EndMap;

  e << YAML::Key << "grid" << YAML::Value << YAML::Flow << YAML::BeginMap;
  e << YAML::Key << "lo" << YAML::Value << num(c.grid.lo);
  e << YAML::Key << "hi" << YAML::Value << num(c.grid.hi);
  e << YAML::Key << "points" << YAML::Value << c.grid.points;
  e << YAML::EndMap;

  e << YAML::Key << "seeds" << YAML::Value << YAML::Flow << c.seeds;

  e << YAML::Key << "sweep" << YAML::Value << YAML::BeginSeq;
  for (const auto& axis : c.sweep) {
    e << YAML::BeginMap << YAML::Key << "parameter" << YAML::Value << axis.parameter;
    if (axis.parameter == "reference") {
      e << YAML::Key << "references" << YAML::Value << YAML::BeginSeq;
      for (const auto& r : axis.references) {
        e << YAML::Flow;
        emit_reference(e, r);
      }
      e << YAML::EndSeq;
    } else {
      std::vector<std::string> values;
      for (double v : axis.values) values.push_back(num(v));
      e << YAML::Key << "values" << YAML::Value << YAML::Flow << values;
    }
    e << YAML::EndMap;
  }
  e << YAML::EndSeq;

  e << YAML::Key << "baseline" << YAML::Value << YAML::Flow << YAML::BeginMap;
  e << YAML::Key << "a" << YAML::Value << num(c.baseline.a);
  e << YAML::Key << "b" << YAML::Value << num(c.baseline.b);
  e << YAML::Key << "n" << YAML::Value << c.baseline.n;
  e << YAML::Key << "method" << YAML::Value << c.baseline.method;
  e << YAML::EndMap;

  e << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "all_snapshots" << YAML::Value << c.output.all_snapshots;
  e << YAML::Key << "renormalize" << YAML::Value << c.output.renormalize;
  e << YAML::Key << "invariance_samples" << YAML::Value << c.output.invariance_samples;
  e << YAML::EndMap;

  e << YAML::Key << "threads" << YAML::Value << c.threads;
  e << YAML::Key << "output_dir" << YAML::Value << c.output_dir.string();
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

}  // namespace fredholm::cli
