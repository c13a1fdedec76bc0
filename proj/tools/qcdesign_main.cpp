// Command-line front end: online co-design runs, fixed-gain baselines,
// brute-force encoded validation and config inspection.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qcd/codesign.hpp"
#include "qcd/config.hpp"
#include "qcd/errors.hpp"
#include "qcd/io.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string scenario;
  std::string out_dir;
  std::int64_t seed = -1;
  int threads = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Path to a JSON config file");
  cmd->add_option("--scenario", args.scenario,
                  "Scenario override: consensus1, consensus2 or motor");
  cmd->add_option("--out", args.out_dir, "Output directory override");
  cmd->add_option("--seed", args.seed, "Master seed override");
  cmd->add_option("--threads", args.threads, "Worker thread count (0 = machine parallelism)");
}

qcd::config::RunConfig load_config(const CommonArgs& args) {
  std::optional<qcd::config::ScenarioKind> override;
  if (!args.scenario.empty()) override = qcd::config::scenario_from_string(args.scenario);

  qcd::config::RunConfig cfg;
  if (!args.config_path.empty()) {
    cfg = qcd::config::parse_config(args.config_path, override);
  } else {
    cfg = qcd::config::defaults_for(
        override.value_or(qcd::config::ScenarioKind::consensus1));
  }
  if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (args.threads >= 0) cfg.threads = args.threads;
  qcd::config::validate(cfg);
  return cfg;
}

void write_outputs(const qcd::config::RunConfig& cfg, const qcd::codesign::RunLog& log,
                   const qcd::scenario::Scenario& scen) {
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);
  qcd::io::write_epochs_csv((dir / "epochs.csv").string(), log, scen);
  qcd::io::write_trajectory_csv((dir / "trajectory.csv").string(), log, scen);
  qcd::io::write_run_meta((dir / "run_meta.json").string(), qcd::config::to_json(cfg));
  if (cfg.dump_qite_trace) {
    for (const auto& rec : log.epochs) {
      if (rec.qite_energy_trace.empty()) continue;
      qcd::io::write_qite_trace_csv(
          (dir / ("qite_trace_epoch" + std::to_string(rec.index) + ".csv")).string(),
          rec.qite_energy_trace);
    }
  }
}

int cmd_run(const CommonArgs& args) {
  const qcd::config::RunConfig cfg = load_config(args);
  const auto scen = qcd::config::build_scenario(cfg);
  const qcd::codesign::PipelineSettings settings = qcd::config::pipeline_settings(cfg);
  const qcd::Executor exec(cfg.threads);
  const qcd::codesign::RunLog log = qcd::codesign::run_simulation(*scen, settings, exec);
  write_outputs(cfg, log, *scen);
  std::cout << "run: " << log.epochs.size() << " epochs, final metric "
            << (log.epochs.empty() ? 0.0 : log.epochs.back().error_metric)
            << (log.terminated_early ? " (terminated early)" : "") << "\n";
  return 0;
}

int cmd_baseline(const CommonArgs& args, const std::vector<double>& design_flag,
                 double horizon_flag) {
  qcd::config::RunConfig cfg = load_config(args);
  if (!design_flag.empty()) {
    if (static_cast<int>(design_flag.size()) != cfg.param_dim())
      throw qcd::ValidationError("--design needs " + std::to_string(cfg.param_dim()) +
                                 " comma-separated values");
    cfg.baseline_design =
        Eigen::Map<const Eigen::VectorXd>(design_flag.data(),
                                          static_cast<Eigen::Index>(design_flag.size()));
  }
  const auto scen = qcd::config::build_scenario(cfg);
  const qcd::codesign::PipelineSettings settings = qcd::config::pipeline_settings(cfg);
  const qcd::Executor exec(cfg.threads);
  const double horizon = horizon_flag >= 0.0 ? horizon_flag : cfg.max_time;
  const qcd::codesign::RunLog log =
      qcd::codesign::run_fixed_baseline(*scen, cfg.baseline_design, horizon, settings, exec);
  write_outputs(cfg, log, *scen);
  std::cout << "baseline: " << log.epochs.size() << " intervals logged\n";
  return 0;
}

int cmd_brute(const CommonArgs& args, int cap) {
  const qcd::config::RunConfig cfg = load_config(args);
  const auto scen = qcd::config::build_scenario(cfg);
  const qcd::codesign::PipelineSettings settings = qcd::config::pipeline_settings(cfg);
  if (cfg.encoding_mode == "fixed" && cfg.fixed_bits * cfg.param_dim() > cap)
    throw qcd::CapExceeded("brute: fixed encoding needs " +
                           std::to_string(cfg.fixed_bits * cfg.param_dim()) +
                           " qubits, cap is " + std::to_string(cap));
  const qcd::Executor exec(cfg.threads);
  const qcd::codesign::RunLog log = qcd::codesign::run_simulation(*scen, settings, exec);
  write_outputs(cfg, log, *scen);

  std::vector<qcd::io::BruteRow> rows;
  for (const auto& rec : log.epochs) {
    if (rec.n_qubits > cap)
      throw qcd::CapExceeded("brute: epoch " + std::to_string(rec.index) + " needs " +
                             std::to_string(rec.n_qubits) + " qubits, cap is " +
                             std::to_string(cap));
    const qcd::encoding::BitAllocation alloc = qcd::encoding::allocate_bits(
        rec.calibrated_region, settings.bh.freeze_thresholds, settings.bit_mode,
        settings.fixed_bits);
    qcd::cost::EpochContext ctx;
    ctx.t_start = rec.t_start;
    ctx.x_start = rec.x_start;
    ctx.horizon = settings.horizon;
    ctx.n_grid = settings.n_grid;
    ctx.rtol = settings.rtol;
    ctx.atol = settings.atol;
    const qcd::codesign::BruteResult brute = qcd::codesign::brute_force_epoch(
        rec.calibrated_region, alloc, ctx, *scen, settings.stability, settings.weights, exec);
    rows.push_back({rec.index, rec.t_start, rec.exact_cost, brute.min_cost});
  }
  qcd::io::write_brute_csv(
      (std::filesystem::path(cfg.out_dir) / "brute.csv").string(), rows);
  std::cout << "brute: " << rows.size() << " epochs validated\n";
  return 0;
}

int cmd_print_config(const CommonArgs& args) {
  const qcd::config::RunConfig cfg = load_config(args);
  std::cout << qcd::config::to_json(cfg).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online controller/certificate co-design via calibrated binary encoding"};
  app.require_subcommand(1);

  CommonArgs run_args, base_args, brute_args, print_args;
  std::vector<double> baseline_design;
  double baseline_horizon = -1.0;
  int brute_cap = 12;

  CLI::App* run = app.add_subcommand("run", "Online co-design run");
  add_common(run, run_args);

  CLI::App* baseline = app.add_subcommand("baseline", "Fixed-design run, no optimization");
  add_common(baseline, base_args);
  baseline->add_option("--design", baseline_design,
                       "Fixed design vector (defaults to the scenario baseline)");
  baseline->add_option("--horizon", baseline_horizon,
                       "Simulation horizon in seconds (defaults to max_time)");

  CLI::App* brute = app.add_subcommand("brute", "Run plus exhaustive encoded validation");
  add_common(brute, brute_args);
  brute->add_option("--cap", brute_cap, "Maximum admissible qubit count");

  CLI::App* print = app.add_subcommand("print-config", "Print the effective configuration");
  add_common(print, print_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (baseline->parsed()) return cmd_baseline(base_args, baseline_design, baseline_horizon);
    if (brute->parsed()) return cmd_brute(brute_args, brute_cap);
    if (print->parsed()) return cmd_print_config(print_args);
  } catch (const qcd::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qcd::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qcd::CapExceeded& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qcd::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
