#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcd/blackhole.hpp"
#include "qcd/cost.hpp"
#include "qcd/encoding.hpp"
#include "qcd/quantum.hpp"
#include "qcd/scenario.hpp"
#include "qcd/surrogate.hpp"
#include "qcd/util.hpp"

namespace qcd::codesign {

using DesignVector = blackhole::DesignVector;

// Everything one epoch needs beyond the scenario itself.
struct PipelineSettings {
  // Short-horizon evaluation.
  double horizon = 0.25;
  int n_grid = 150;
  double rtol = 1e-6;
  double atol = 1e-8;

  // Outer loop.
  double redesign_interval = 0.25;
  double max_time = 10.0;
  int log_grid_factor = 10;  // applied-interval logging grid = factor * n_grid

  cost::CostWeights weights;
  lyapunov::StabilitySpec stability;

  blackhole::BhSettings bh;

  encoding::BitMode bit_mode = encoding::BitMode::adaptive;
  int fixed_bits = 3;

  int train_factor = 4;
  int train_minimum = 64;
  double fit_ridge = 1e-10;

  int ansatz_reps = 2;
  quantum::QiteSettings qite;
  int top_k = 32;

  std::uint64_t master_seed = 42;
};

struct EpochRecord {
  int index = 0;
  double t_start = 0.0;
  blackhole::SearchRegion calibrated_region;
  int n_qubits = 0;
  DesignVector design;          // applied winner
  double exact_cost = 0.0;      // winner's exact penalized cost
  double surrogate_min_seen = 0.0;
  int candidate_count = 0;
  double error_metric = 0.0;    // scenario metric at the epoch start
  double qite_final_energy = 0.0;
  double safety_net_cost = 0.0;  // exact cost of the encoded calibration best
  Eigen::VectorXd x_start;       // epoch-start state, kept for audits
  std::vector<double> qite_energy_trace;
};

struct RunLog {
  std::vector<EpochRecord> epochs;
  integrate::Trajectory trajectory;  // stitched over all applied intervals
  std::vector<double> v_values;      // V along the stitched trajectory
  bool terminated_early = false;
  std::string termination_reason;
};

// One decision epoch: calibrate, encode, fit, evolve, screen, pick the
// winner by exact re-evaluation.
EpochRecord run_epoch(const Eigen::VectorXd& x_k, double t_k,
                      const scenario::Scenario& scen, const PipelineSettings& settings,
                      Rng& rng, const Executor& exec);

// Full online loop: epochs at multiples of the redesign interval, each
// winner applied over its interval, stopping early when the scenario's rule
// fires or at max_time.
RunLog run_simulation(const scenario::Scenario& scen, const PipelineSettings& settings,
                      const Executor& exec);

// Fixed-design run with the same logging schema and no optimization.
RunLog run_fixed_baseline(const scenario::Scenario& scen, const DesignVector& design,
                          double horizon, const PipelineSettings& settings,
                          const Executor& exec);

// Exhaustive encoded optimum for one epoch's binary domain.
struct BruteResult {
  double min_cost = 0.0;
  encoding::Bitstring argmin;
};
BruteResult brute_force_epoch(const blackhole::SearchRegion& region,
                              const encoding::BitAllocation& alloc,
                              const cost::EpochContext& ctx, const scenario::Scenario& scen,
                              const lyapunov::StabilitySpec& spec,
                              const cost::CostWeights& w, const Executor& exec);

}  // namespace qcd::codesign
