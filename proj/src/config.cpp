#include "qcd/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcd/errors.hpp"

namespace qcd::config {

using nlohmann::json;

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::consensus1: return "consensus1";
    case ScenarioKind::consensus2: return "consensus2";
    case ScenarioKind::motor: return "motor";
  }
  throw ValidationError("unknown scenario kind");
}

ScenarioKind scenario_from_string(const std::string& name) {
  if (name == "consensus1") return ScenarioKind::consensus1;
  if (name == "consensus2") return ScenarioKind::consensus2;
  if (name == "motor") return ScenarioKind::motor;
  throw ValidationError("scenario: expected consensus1, consensus2 or motor, got '" + name + "'");
}

int RunConfig::param_dim() const { return scenario == ScenarioKind::motor ? 4 : 5; }

RunConfig defaults_for(ScenarioKind kind) {
  RunConfig c;
  c.scenario = kind;
  switch (kind) {
    case ScenarioKind::consensus1:
      c.redesign_interval = 0.25;
      c.max_time = 10.0;
      c.horizon = 0.25;
      c.horizon_grid = 150;
      c.stopping_threshold = 1e-8;
      c.freeze_threshold = 5.0;
      c.encoding_mode = "adaptive";
      c.qite_tau = 3.0;
      c.interval_lower = Eigen::VectorXd::Zero(5);
      c.interval_upper = (Eigen::VectorXd(5) << 50, 2, 50, 25, 25).finished();
      c.baseline_design = (Eigen::VectorXd(5) << 2, 1, 5, 1, 1).finished();
      break;
    case ScenarioKind::consensus2:
      c.redesign_interval = 0.5;
      c.max_time = 50.0;
      c.horizon = 0.25;
      c.horizon_grid = 150;
      c.stopping_threshold = 1e-4;
      c.freeze_threshold = 5.0;
      c.encoding_mode = "adaptive";
      c.qite_tau = 3.0;
      c.interval_lower = Eigen::VectorXd::Zero(5);
      c.interval_upper = (Eigen::VectorXd(5) << 50, 50, 50, 40, 20).finished();
      c.baseline_design = (Eigen::VectorXd(5) << 5, 5, 1, 1, 1).finished();
      break;
    case ScenarioKind::motor:
      c.redesign_interval = 0.2;
      c.max_time = 2.2;
      c.horizon = 0.10;
      c.horizon_grid = 120;
      c.stopping_threshold = 0.0;  // time-limited run
      c.freeze_threshold = 25.0;
      c.encoding_mode = "fixed";
      c.fixed_bits = 3;
      c.qite_tau = 2.0;
      c.w_error = 1.0;  // per-component weights are folded into the error vector
      c.w_control = 1e-4;
      c.interval_lower = (Eigen::VectorXd(4) << -100, -100, 0.01, 0.01).finished();
      c.interval_upper = (Eigen::VectorXd(4) << 1000, 1000, 100, 100).finished();
      c.baseline_design = (Eigen::VectorXd(4) << 100, 100, 1, 1).finished();
      break;
  }
  return c;
}

namespace {

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key))
      throw ValidationError("unknown key '" + (where.empty() ? key : where + "." + key) + "'");
  }
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ValidationError("key '" + key + "' must be a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ValidationError("key '" + key + "' must be an integer");
  return v.get<int>();
}

Eigen::VectorXd vector(const json& v, const std::string& key) {
  if (!v.is_array()) throw ValidationError("key '" + key + "' must be an array of numbers");
  Eigen::VectorXd out(v.size());
  Eigen::Index i = 0;
  for (const auto& item : v) out(i++) = number(item, key);
  return out;
}

std::vector<double> std_vector(const json& v, const std::string& key) {
  const Eigen::VectorXd e = vector(v, key);
  return std::vector<double>(e.data(), e.data() + e.size());
}

void apply_weights(RunConfig& c, const json& obj) {
  require_keys(obj, {"error", "control", "lyapunov", "margin", "flux_error", "speed_error",
                     "current_error"},
               "weights");
  if (obj.contains("error")) c.w_error = number(obj["error"], "weights.error");
  if (obj.contains("control")) c.w_control = number(obj["control"], "weights.control");
  if (obj.contains("lyapunov")) c.w_lyap = number(obj["lyapunov"], "weights.lyapunov");
  if (obj.contains("margin")) c.eps_margin = number(obj["margin"], "weights.margin");
  if (obj.contains("flux_error")) c.w_flux_error = number(obj["flux_error"], "weights.flux_error");
  if (obj.contains("speed_error"))
    c.w_speed_error = number(obj["speed_error"], "weights.speed_error");
  if (obj.contains("current_error"))
    c.w_current_error = number(obj["current_error"], "weights.current_error");
}

void apply_motor(RunConfig& c, const json& obj) {
  require_keys(obj,
               {"Rs", "Rr", "Ls", "Lr", "Lm", "J", "pole_pairs", "plant_lm_scale", "flux_ref",
                "psi_floor", "speed_knot_t", "speed_knot_w", "load_step_time", "load_before",
                "load_after"},
               "motor");
  auto& m = c.motor_nominal;
  if (obj.contains("Rs")) m.Rs = number(obj["Rs"], "motor.Rs");
  if (obj.contains("Rr")) m.Rr = number(obj["Rr"], "motor.Rr");
  if (obj.contains("Ls")) m.Ls = number(obj["Ls"], "motor.Ls");
  if (obj.contains("Lr")) m.Lr = number(obj["Lr"], "motor.Lr");
  if (obj.contains("Lm")) m.Lm = number(obj["Lm"], "motor.Lm");
  if (obj.contains("J")) m.J = number(obj["J"], "motor.J");
  if (obj.contains("pole_pairs")) m.pole_pairs = integer(obj["pole_pairs"], "motor.pole_pairs");
  if (obj.contains("plant_lm_scale"))
    c.plant_lm_scale = number(obj["plant_lm_scale"], "motor.plant_lm_scale");
  auto& r = c.motor_refs;
  if (obj.contains("flux_ref")) r.flux_ref = number(obj["flux_ref"], "motor.flux_ref");
  if (obj.contains("psi_floor")) r.psi_floor = number(obj["psi_floor"], "motor.psi_floor");
  if (obj.contains("speed_knot_t")) r.speed_knot_t = std_vector(obj["speed_knot_t"], "motor.speed_knot_t");
  if (obj.contains("speed_knot_w")) r.speed_knot_w = std_vector(obj["speed_knot_w"], "motor.speed_knot_w");
  if (obj.contains("load_step_time"))
    r.load_step_time = number(obj["load_step_time"], "motor.load_step_time");
  if (obj.contains("load_before")) r.load_before = number(obj["load_before"], "motor.load_before");
  if (obj.contains("load_after")) r.load_after = number(obj["load_after"], "motor.load_after");
}

void apply_stability(RunConfig& c, const json& obj) {
  require_keys(obj, {"kind", "alpha", "c", "gamma", "a", "b", "p", "q"}, "stability");
  auto& s = c.stability;
  if (obj.contains("kind")) {
    const std::string kind = obj["kind"].get<std::string>();
    if (kind == "asymptotic") s.kind = lyapunov::StabilityKind::asymptotic;
    else if (kind == "exponential") s.kind = lyapunov::StabilityKind::exponential;
    else if (kind == "finite_time") s.kind = lyapunov::StabilityKind::finite_time;
    else if (kind == "fixed_time") s.kind = lyapunov::StabilityKind::fixed_time;
    else throw ValidationError("stability.kind: unknown kind '" + kind + "'");
  }
  if (obj.contains("alpha")) s.alpha = number(obj["alpha"], "stability.alpha");
  if (obj.contains("c")) s.c = number(obj["c"], "stability.c");
  if (obj.contains("gamma")) s.gamma = number(obj["gamma"], "stability.gamma");
  if (obj.contains("a")) s.a = number(obj["a"], "stability.a");
  if (obj.contains("b")) s.b = number(obj["b"], "stability.b");
  if (obj.contains("p")) s.p = number(obj["p"], "stability.p");
  if (obj.contains("q")) s.q = number(obj["q"], "stability.q");
}

}  // namespace

RunConfig from_json(const json& doc, std::optional<ScenarioKind> scenario_override) {
  if (!doc.is_object()) throw ParseError("config root must be a JSON object");

  ScenarioKind kind = ScenarioKind::consensus1;
  if (scenario_override) {
    kind = *scenario_override;
  } else if (doc.contains("scenario")) {
    if (!doc["scenario"].is_string()) throw ValidationError("scenario: must be a string");
    kind = scenario_from_string(doc["scenario"].get<std::string>());
  }
  RunConfig c = defaults_for(kind);

  require_keys(doc,
               {"scenario", "seed", "out_dir", "threads", "redesign_interval", "max_time",
                "horizon", "horizon_grid", "log_grid_factor", "stopping_threshold",
                "dump_qite_trace", "weights", "intervals", "blackhole", "encoding", "surrogate",
                "qite", "stability", "integrator", "consensus2", "motor", "baseline_design"},
               "");

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned())
      throw ValidationError("seed: must be a non-negative integer");
    c.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("out_dir")) c.out_dir = doc["out_dir"].get<std::string>();
  if (doc.contains("threads")) c.threads = integer(doc["threads"], "threads");
  if (doc.contains("redesign_interval"))
    c.redesign_interval = number(doc["redesign_interval"], "redesign_interval");
  if (doc.contains("max_time")) c.max_time = number(doc["max_time"], "max_time");
  if (doc.contains("horizon")) c.horizon = number(doc["horizon"], "horizon");
  if (doc.contains("horizon_grid")) c.horizon_grid = integer(doc["horizon_grid"], "horizon_grid");
  if (doc.contains("log_grid_factor"))
    c.log_grid_factor = integer(doc["log_grid_factor"], "log_grid_factor");
  if (doc.contains("stopping_threshold"))
    c.stopping_threshold = number(doc["stopping_threshold"], "stopping_threshold");
  if (doc.contains("dump_qite_trace")) {
    if (!doc["dump_qite_trace"].is_boolean())
      throw ValidationError("dump_qite_trace: must be a boolean");
    c.dump_qite_trace = doc["dump_qite_trace"].get<bool>();
  }
  if (doc.contains("weights")) apply_weights(c, doc["weights"]);
  if (doc.contains("intervals")) {
    const json& obj = doc["intervals"];
    require_keys(obj, {"lower", "upper"}, "intervals");
    if (obj.contains("lower")) c.interval_lower = vector(obj["lower"], "intervals.lower");
    if (obj.contains("upper")) c.interval_upper = vector(obj["upper"], "intervals.upper");
  }
  if (doc.contains("blackhole")) {
    const json& obj = doc["blackhole"];
    require_keys(obj, {"population", "max_iters", "freeze_threshold"}, "blackhole");
    if (obj.contains("population"))
      c.bh_population = integer(obj["population"], "blackhole.population");
    if (obj.contains("max_iters")) c.bh_max_iters = integer(obj["max_iters"], "blackhole.max_iters");
    if (obj.contains("freeze_threshold"))
      c.freeze_threshold = number(obj["freeze_threshold"], "blackhole.freeze_threshold");
  }
  if (doc.contains("encoding")) {
    const json& obj = doc["encoding"];
    require_keys(obj, {"mode", "fixed_bits"}, "encoding");
    if (obj.contains("mode")) {
      c.encoding_mode = obj["mode"].get<std::string>();
      if (c.encoding_mode != "adaptive" && c.encoding_mode != "fixed")
        throw ValidationError("encoding.mode: expected 'adaptive' or 'fixed'");
    }
    if (obj.contains("fixed_bits")) c.fixed_bits = integer(obj["fixed_bits"], "encoding.fixed_bits");
  }
  if (doc.contains("surrogate")) {
    const json& obj = doc["surrogate"];
    require_keys(obj, {"factor", "minimum", "ridge"}, "surrogate");
    if (obj.contains("factor")) c.train_factor = integer(obj["factor"], "surrogate.factor");
    if (obj.contains("minimum")) c.train_minimum = integer(obj["minimum"], "surrogate.minimum");
    if (obj.contains("ridge")) c.fit_ridge = number(obj["ridge"], "surrogate.ridge");
  }
  if (doc.contains("qite")) {
    const json& obj = doc["qite"];
    require_keys(obj, {"reps", "tau", "steps", "ridge", "init_scale", "top_k"}, "qite");
    if (obj.contains("reps")) c.ansatz_reps = integer(obj["reps"], "qite.reps");
    if (obj.contains("tau")) c.qite_tau = number(obj["tau"], "qite.tau");
    if (obj.contains("steps")) c.qite_steps = integer(obj["steps"], "qite.steps");
    if (obj.contains("ridge")) c.qite_ridge = number(obj["ridge"], "qite.ridge");
    if (obj.contains("init_scale")) c.qite_init_scale = number(obj["init_scale"], "qite.init_scale");
    if (obj.contains("top_k")) c.top_k = integer(obj["top_k"], "qite.top_k");
  }
  if (doc.contains("stability")) apply_stability(c, doc["stability"]);
  if (doc.contains("integrator")) {
    const json& obj = doc["integrator"];
    require_keys(obj, {"rtol", "atol"}, "integrator");
    if (obj.contains("rtol")) c.rtol = number(obj["rtol"], "integrator.rtol");
    if (obj.contains("atol")) c.atol = number(obj["atol"], "integrator.atol");
  }
  if (doc.contains("consensus2")) {
    const json& obj = doc["consensus2"];
    require_keys(obj, {"drag_a", "drag_b"}, "consensus2");
    if (obj.contains("drag_a")) c.drag_a = number(obj["drag_a"], "consensus2.drag_a");
    if (obj.contains("drag_b")) c.drag_b = number(obj["drag_b"], "consensus2.drag_b");
  }
  if (doc.contains("motor")) apply_motor(c, doc["motor"]);
  if (doc.contains("baseline_design"))
    c.baseline_design = vector(doc["baseline_design"], "baseline_design");

  validate(c);
  return c;
}

RunConfig parse_config(const std::string& path, std::optional<ScenarioKind> scenario_override) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) text = "{}";  // empty file means all defaults
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("config parse error: " + std::string(e.what()));
  }
  return from_json(doc, scenario_override);
}

void validate(const RunConfig& c) {
  auto positive = [](double v, const std::string& key) {
    if (!(v > 0.0)) throw ValidationError("key '" + key + "' must be positive");
  };
  auto non_negative = [](double v, const std::string& key) {
    if (!(v >= 0.0)) throw ValidationError("key '" + key + "' must be non-negative");
  };
  positive(c.redesign_interval, "redesign_interval");
  positive(c.max_time, "max_time");
  positive(c.horizon, "horizon");
  if (c.horizon_grid < 2) throw ValidationError("key 'horizon_grid' must be at least 2");
  if (c.log_grid_factor < 1) throw ValidationError("key 'log_grid_factor' must be at least 1");
  non_negative(c.stopping_threshold, "stopping_threshold");
  non_negative(c.w_error, "weights.error");
  non_negative(c.w_control, "weights.control");
  non_negative(c.w_lyap, "weights.lyapunov");
  positive(c.eps_margin, "weights.margin");
  non_negative(c.w_flux_error, "weights.flux_error");
  non_negative(c.w_speed_error, "weights.speed_error");
  non_negative(c.w_current_error, "weights.current_error");

  const int np = c.param_dim();
  if (c.interval_lower.size() != np || c.interval_upper.size() != np)
    throw ValidationError("key 'intervals' must have " + std::to_string(np) +
                          " entries per bound for scenario " + to_string(c.scenario));
  for (int j = 0; j < np; ++j)
    if (c.interval_lower(j) > c.interval_upper(j))
      throw ValidationError("key 'intervals': lower exceeds upper at index " + std::to_string(j));

  if (c.bh_population < 2) throw ValidationError("key 'blackhole.population' must be at least 2");
  if (c.bh_max_iters < 0) throw ValidationError("key 'blackhole.max_iters' must be non-negative");
  positive(c.freeze_threshold, "blackhole.freeze_threshold");

  if (c.fixed_bits < 1 || c.fixed_bits > 16)
    throw ValidationError("key 'encoding.fixed_bits' must lie in [1, 16]");
  if (c.train_factor < 1) throw ValidationError("key 'surrogate.factor' must be at least 1");
  if (c.train_minimum < 1) throw ValidationError("key 'surrogate.minimum' must be at least 1");
  positive(c.fit_ridge, "surrogate.ridge");

  if (c.ansatz_reps < 0) throw ValidationError("key 'qite.reps' must be non-negative");
  positive(c.qite_tau, "qite.tau");
  if (c.qite_steps < 1) throw ValidationError("key 'qite.steps' must be at least 1");
  positive(c.qite_ridge, "qite.ridge");
  non_negative(c.qite_init_scale, "qite.init_scale");
  if (c.top_k < 1) throw ValidationError("key 'qite.top_k' must be at least 1");

  positive(c.rtol, "integrator.rtol");
  positive(c.atol, "integrator.atol");

  const auto& s = c.stability;
  positive(s.alpha, "stability.alpha");
  positive(s.c, "stability.c");
  if (!(s.gamma > 0.0 && s.gamma < 1.0))
    throw ValidationError("key 'stability.gamma' must lie in (0,1)");
  positive(s.a, "stability.a");
  positive(s.b, "stability.b");
  if (!(s.p > 0.0 && s.p < 1.0)) throw ValidationError("key 'stability.p' must lie in (0,1)");
  if (!(s.q > 1.0)) throw ValidationError("key 'stability.q' must exceed 1");

  if (c.scenario == ScenarioKind::motor) {
    const auto& m = c.motor_nominal;
    if (!(m.l_sigma() > 0.0))
      throw ValidationError("key 'motor': Ls - Lm^2/Lr must be positive");
    plants::MotorParams plant = m;
    plant.Lm *= c.plant_lm_scale;
    if (!(plant.l_sigma() > 0.0))
      throw ValidationError("key 'motor.plant_lm_scale': mismatched leakage must stay positive");
    positive(c.plant_lm_scale, "motor.plant_lm_scale");
    if (!(c.motor_refs.flux_ref > c.motor_refs.psi_floor && c.motor_refs.psi_floor > 0.0))
      throw ValidationError("key 'motor': need flux_ref > psi_floor > 0");
    if (c.motor_refs.speed_knot_t.size() != c.motor_refs.speed_knot_w.size() ||
        c.motor_refs.speed_knot_t.size() < 2)
      throw ValidationError("key 'motor.speed_knot_t/w' must be equal-length, size >= 2");
    for (std::size_t i = 1; i < c.motor_refs.speed_knot_t.size(); ++i)
      if (!(c.motor_refs.speed_knot_t[i] > c.motor_refs.speed_knot_t[i - 1]))
        throw ValidationError("key 'motor.speed_knot_t' must be strictly increasing");
    if (m.J <= 0.0) throw ValidationError("key 'motor.J' must be positive");
    if (m.pole_pairs < 1) throw ValidationError("key 'motor.pole_pairs' must be at least 1");
  }

  if (c.baseline_design.size() != np)
    throw ValidationError("key 'baseline_design' must have " + std::to_string(np) + " entries");
  if (c.threads < 0) throw ValidationError("key 'threads' must be non-negative");
}

nlohmann::json to_json(const RunConfig& c) {
  json doc;
  doc["scenario"] = to_string(c.scenario);
  doc["seed"] = c.seed;
  doc["out_dir"] = c.out_dir;
  doc["threads"] = c.threads;
  doc["redesign_interval"] = c.redesign_interval;
  doc["max_time"] = c.max_time;
  doc["horizon"] = c.horizon;
  doc["horizon_grid"] = c.horizon_grid;
  doc["log_grid_factor"] = c.log_grid_factor;
  doc["stopping_threshold"] = c.stopping_threshold;
  doc["dump_qite_trace"] = c.dump_qite_trace;
  doc["weights"] = {{"error", c.w_error},
                    {"control", c.w_control},
                    {"lyapunov", c.w_lyap},
                    {"margin", c.eps_margin},
                    {"flux_error", c.w_flux_error},
                    {"speed_error", c.w_speed_error},
                    {"current_error", c.w_current_error}};
  doc["intervals"] = {
      {"lower", std::vector<double>(c.interval_lower.data(),
                                    c.interval_lower.data() + c.interval_lower.size())},
      {"upper", std::vector<double>(c.interval_upper.data(),
                                    c.interval_upper.data() + c.interval_upper.size())}};
  doc["blackhole"] = {{"population", c.bh_population},
                      {"max_iters", c.bh_max_iters},
                      {"freeze_threshold", c.freeze_threshold}};
  doc["encoding"] = {{"mode", c.encoding_mode}, {"fixed_bits", c.fixed_bits}};
  doc["surrogate"] = {{"factor", c.train_factor},
                      {"minimum", c.train_minimum},
                      {"ridge", c.fit_ridge}};
  doc["qite"] = {{"reps", c.ansatz_reps}, {"tau", c.qite_tau},   {"steps", c.qite_steps},
                 {"ridge", c.qite_ridge}, {"init_scale", c.qite_init_scale},
                 {"top_k", c.top_k}};
  std::string kind = "asymptotic";
  if (c.stability.kind == lyapunov::StabilityKind::exponential) kind = "exponential";
  if (c.stability.kind == lyapunov::StabilityKind::finite_time) kind = "finite_time";
  if (c.stability.kind == lyapunov::StabilityKind::fixed_time) kind = "fixed_time";
  doc["stability"] = {{"kind", kind},       {"alpha", c.stability.alpha},
                      {"c", c.stability.c}, {"gamma", c.stability.gamma},
                      {"a", c.stability.a}, {"b", c.stability.b},
                      {"p", c.stability.p}, {"q", c.stability.q}};
  doc["integrator"] = {{"rtol", c.rtol}, {"atol", c.atol}};
  doc["consensus2"] = {{"drag_a", c.drag_a}, {"drag_b", c.drag_b}};
  doc["motor"] = {{"Rs", c.motor_nominal.Rs},
                  {"Rr", c.motor_nominal.Rr},
                  {"Ls", c.motor_nominal.Ls},
                  {"Lr", c.motor_nominal.Lr},
                  {"Lm", c.motor_nominal.Lm},
                  {"J", c.motor_nominal.J},
                  {"pole_pairs", c.motor_nominal.pole_pairs},
                  {"plant_lm_scale", c.plant_lm_scale},
                  {"flux_ref", c.motor_refs.flux_ref},
                  {"psi_floor", c.motor_refs.psi_floor},
                  {"speed_knot_t", c.motor_refs.speed_knot_t},
                  {"speed_knot_w", c.motor_refs.speed_knot_w},
                  {"load_step_time", c.motor_refs.load_step_time},
                  {"load_before", c.motor_refs.load_before},
                  {"load_after", c.motor_refs.load_after}};
  doc["baseline_design"] = std::vector<double>(
      c.baseline_design.data(), c.baseline_design.data() + c.baseline_design.size());
  return doc;
}

std::unique_ptr<scenario::Scenario> build_scenario(const RunConfig& c) {
  switch (c.scenario) {
    case ScenarioKind::consensus1: {
      scenario::FirstOrderSettings s;
      s.n_agents = 5;
      s.x0 = (Eigen::VectorXd(5) << 2.0, -2.5, 3.8, -3.2, 0.3).finished();
      s.interval_lower = c.interval_lower;
      s.interval_upper = c.interval_upper;
      s.stop_threshold = c.stopping_threshold;
      return scenario::make_first_order(s);
    }
    case ScenarioKind::consensus2: {
      scenario::SecondOrderSettings s;
      s.n_agents = 5;
      s.x0 = (Eigen::VectorXd(5) << 5, -4, 3, -2, 1).finished();
      s.v0 = (Eigen::VectorXd(5) << 0, 1.5, -1, 0.5, -0.5).finished();
      s.interval_lower = c.interval_lower;
      s.interval_upper = c.interval_upper;
      s.drag_a = c.drag_a;
      s.drag_b = c.drag_b;
      s.stop_threshold = c.stopping_threshold;
      return scenario::make_second_order(s);
    }
    case ScenarioKind::motor: {
      scenario::MotorSettings s;
      s.nominal = c.motor_nominal;
      s.plant = c.motor_nominal;
      s.plant.Lm *= c.plant_lm_scale;
      s.refs = c.motor_refs;
      s.x0 = (Eigen::VectorXd(5) << 0, 0, 0.9, 0, 0).finished();
      s.interval_lower = c.interval_lower;
      s.interval_upper = c.interval_upper;
      s.w_flux_error = c.w_flux_error;
      s.w_speed_error = c.w_speed_error;
      s.w_current_error = c.w_current_error;
      return scenario::make_motor(s);
    }
  }
  throw ValidationError("unknown scenario");
}

codesign::PipelineSettings pipeline_settings(const RunConfig& c) {
  codesign::PipelineSettings s;
  s.horizon = c.horizon;
  s.n_grid = c.horizon_grid;
  s.rtol = c.rtol;
  s.atol = c.atol;
  s.redesign_interval = c.redesign_interval;
  s.max_time = c.max_time;
  s.log_grid_factor = c.log_grid_factor;
  s.weights.w_error = c.w_error;
  s.weights.w_control = c.w_control;
  s.weights.w_lyap = c.w_lyap;
  s.weights.eps_margin = c.eps_margin;
  s.stability = c.stability;
  s.bh.population = c.bh_population;
  s.bh.max_iters = c.bh_max_iters;
  s.bh.freeze_thresholds = Eigen::VectorXd::Constant(c.param_dim(), c.freeze_threshold);
  s.bit_mode =
      c.encoding_mode == "fixed" ? encoding::BitMode::fixed : encoding::BitMode::adaptive;
  s.fixed_bits = c.fixed_bits;
  s.train_factor = c.train_factor;
  s.train_minimum = c.train_minimum;
  s.fit_ridge = c.fit_ridge;
  s.ansatz_reps = c.ansatz_reps;
  s.qite.tau = c.qite_tau;
  s.qite.steps = c.qite_steps;
  s.qite.ridge = c.qite_ridge;
  s.qite.init_scale = c.qite_init_scale;
  s.top_k = c.top_k;
  s.master_seed = c.seed;
  return s;
}

}  // namespace qcd::config
