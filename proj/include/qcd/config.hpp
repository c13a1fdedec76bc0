#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qcd/codesign.hpp"
#include "qcd/scenario.hpp"

namespace qcd::config {

enum class ScenarioKind { consensus1, consensus2, motor };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_from_string(const std::string& name);

// Fully resolved run configuration; field defaults are scenario-specific and
// applied by defaults_for().
struct RunConfig {
  ScenarioKind scenario = ScenarioKind::consensus1;
  std::uint64_t seed = 42;
  std::string out_dir = "out";
  int threads = 0;  // 0 = machine parallelism

  double redesign_interval = 0.25;
  double max_time = 10.0;
  double horizon = 0.25;
  int horizon_grid = 150;
  int log_grid_factor = 10;
  double stopping_threshold = 1e-8;
  bool dump_qite_trace = false;

  // Cost weights.
  double w_error = 1.0;
  double w_control = 0.1;
  double w_lyap = 1.0;
  double eps_margin = 1e-6;
  double w_flux_error = 2.0;     // motor only
  double w_speed_error = 10.0;   // motor only
  double w_current_error = 10.0; // motor only

  Eigen::VectorXd interval_lower;
  Eigen::VectorXd interval_upper;

  int bh_population = 20;
  int bh_max_iters = 100;
  double freeze_threshold = 5.0;

  std::string encoding_mode = "adaptive";  // or "fixed"
  int fixed_bits = 3;

  int train_factor = 4;
  int train_minimum = 64;
  double fit_ridge = 1e-10;

  int ansatz_reps = 2;
  double qite_tau = 3.0;
  int qite_steps = 60;
  double qite_ridge = 1e-6;
  double qite_init_scale = 0.1;
  int top_k = 32;

  lyapunov::StabilitySpec stability;

  double rtol = 1e-6;
  double atol = 1e-8;

  // Second-order consensus drag.
  double drag_a = 0.5;
  double drag_b = 0.05;

  // Motor model (nominal controller side) and the plant-side mismatch.
  plants::MotorParams motor_nominal;
  double plant_lm_scale = 0.5;
  plants::MotorReferences motor_refs;

  Eigen::VectorXd baseline_design;

  int param_dim() const;
};

RunConfig defaults_for(ScenarioKind kind);

// Reads a JSON config file (empty file means all defaults), applies it over
// the scenario defaults and validates. Unknown keys are rejected; validation
// errors name the offending key. The optional override wins over a scenario
// key present in the file.
RunConfig parse_config(const std::string& path,
                       std::optional<ScenarioKind> scenario_override = std::nullopt);

// Overlay of an already-parsed document, exposed for tests.
RunConfig from_json(const nlohmann::json& doc,
                    std::optional<ScenarioKind> scenario_override = std::nullopt);

nlohmann::json to_json(const RunConfig& cfg);

void validate(const RunConfig& cfg);

std::unique_ptr<scenario::Scenario> build_scenario(const RunConfig& cfg);
codesign::PipelineSettings pipeline_settings(const RunConfig& cfg);

}  // namespace qcd::config
