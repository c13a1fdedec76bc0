#include "qcd/codesign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "qcd/errors.hpp"

namespace qcd::codesign {

namespace {

cost::EpochContext make_context(const Eigen::VectorXd& x_k, double t_k,
                                const PipelineSettings& s) {
  cost::EpochContext ctx;
  ctx.t_start = t_k;
  ctx.x_start = x_k;
  ctx.horizon = s.horizon;
  ctx.n_grid = s.n_grid;
  ctx.rtol = s.rtol;
  ctx.atol = s.atol;
  return ctx;
}

// Integrates one applied interval on a dense logging grid and appends it to
// the run log (skipping the duplicated left endpoint after the first
// segment). Returns the handed-off terminal state.
Eigen::VectorXd append_segment(RunLog& log, const scenario::Scenario& scen,
                               const DesignVector& p, const Eigen::VectorXd& x0,
                               double t0, double t1, int n_grid,
                               const PipelineSettings& s) {
  integrate::Trajectory seg = integrate::rk45_integrate(
      [&](double t, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
        Eigen::VectorXd u;
        scen.eval(x, t, p, dx, u);
      },
      x0, t0, t1, n_grid, s.rtol, s.atol);

  const lyapunov::Candidate cand = scen.candidate(p);
  const Eigen::Index n = seg.times.size();
  seg.controls.resize(n, scen.control_dim());
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd x = seg.states.row(i).transpose();
    Eigen::VectorXd dx, u;
    scen.eval(x, seg.times(i), p, dx, u);
    seg.controls.row(i) = u.transpose();
    v(i) = lyapunov::eval_V(cand, x, seg.times(i));
  }

  const Eigen::Index skip = log.trajectory.times.size() == 0 ? 0 : 1;
  const Eigen::Index old_n = log.trajectory.times.size();
  const Eigen::Index add = n - skip;
  log.trajectory.times.conservativeResize(old_n + add);
  if (old_n == 0) {
    log.trajectory.states.resize(add, seg.states.cols());
    log.trajectory.controls.resize(add, seg.controls.cols());
  } else {
    log.trajectory.states.conservativeResize(old_n + add, Eigen::NoChange);
    log.trajectory.controls.conservativeResize(old_n + add, Eigen::NoChange);
  }
  log.trajectory.times.segment(old_n, add) = seg.times.segment(skip, add);
  log.trajectory.states.middleRows(old_n, add) = seg.states.middleRows(skip, add);
  log.trajectory.controls.middleRows(old_n, add) = seg.controls.middleRows(skip, add);
  for (Eigen::Index i = skip; i < n; ++i) log.v_values.push_back(v(i));

  return seg.states.row(n - 1).transpose();
}

}  // namespace

EpochRecord run_epoch(const Eigen::VectorXd& x_k, double t_k,
                      const scenario::Scenario& scen, const PipelineSettings& settings,
                      Rng& rng, const Executor& exec) {
  const cost::EpochContext ctx = make_context(x_k, t_k, settings);
  auto objective = [&](const DesignVector& p) {
    return cost::penalized_cost(p, ctx, scen, settings.stability, settings.weights);
  };

  // Step I: contract the admissible region around the current state.
  const blackhole::SearchRegion initial = scen.initial_region();
  const blackhole::CalibrationResult cal =
      blackhole::calibrate(objective, initial, settings.bh, rng, exec);

  // Step II: binary representation over the calibrated region.
  const encoding::BitAllocation alloc =
      encoding::allocate_bits(cal.region, settings.bh.freeze_thresholds, settings.bit_mode,
                              settings.fixed_bits);
  const int n_q = alloc.n_total;

  // Training set for the quadratic surrogate; the calibration incumbent's
  // code is always included.
  std::vector<encoding::Bitstring> samples =
      surrogate::sample_training_set(n_q, settings.train_factor, settings.train_minimum, rng);
  const encoding::Bitstring bh_code = encoding::encode_nearest(cal.best_point, alloc, cal.region);
  if (std::find(samples.begin(), samples.end(), bh_code) == samples.end())
    samples.back() = bh_code;

  std::vector<double> targets(samples.size());
  exec.parallel_for(samples.size(), [&](std::size_t i) {
    targets[i] = cost::exact_bit_cost(samples[i], alloc, cal.region, ctx, scen,
                                      settings.stability, settings.weights);
  });

  const surrogate::QuadraticSurrogate fitted =
      surrogate::fit_quadratic(samples, targets, settings.fit_ridge);
  const surrogate::IsingModel ising = surrogate::qubo_to_ising(fitted);

  // Imaginary-time search over the encoded model.
  quantum::Ansatz ansatz{n_q, settings.ansatz_reps};
  const quantum::QiteResult qite = quantum::varqite_run(ising, ansatz, settings.qite, rng, exec);
  const quantum::StateVector final_state = quantum::prepare_state(ansatz, qite.theta);
  const auto ranked = quantum::top_k_bitstrings(final_state, settings.top_k);

  // Candidate set: screened bitstrings plus the encoded incumbent.
  std::vector<encoding::Bitstring> candidates;
  candidates.reserve(ranked.size() + 1);
  for (const auto& [bits, prob] : ranked) candidates.push_back(bits);
  const bool safety_in_topk =
      std::find(candidates.begin(), candidates.end(), bh_code) != candidates.end();
  if (!safety_in_topk) candidates.push_back(bh_code);

  std::vector<double> exact(candidates.size());
  exec.parallel_for(candidates.size(), [&](std::size_t i) {
    exact[i] = cost::exact_bit_cost(candidates[i], alloc, cal.region, ctx, scen,
                                    settings.stability, settings.weights);
  });

  std::size_t winner = 0;
  for (std::size_t i = 1; i < exact.size(); ++i)
    if (exact[i] < exact[winner]) winner = i;

  double surrogate_min = std::numeric_limits<double>::infinity();
  for (const auto& b : candidates) surrogate_min = std::min(surrogate_min, fitted.evaluate(b));

  EpochRecord rec;
  rec.t_start = t_k;
  rec.calibrated_region = cal.region;
  rec.n_qubits = n_q;
  rec.design = encoding::decode(candidates[winner], alloc, cal.region);
  rec.exact_cost = exact[winner];
  rec.surrogate_min_seen = surrogate_min;
  rec.candidate_count = static_cast<int>(candidates.size());
  rec.error_metric = scen.error_metric(x_k, t_k);
  rec.qite_final_energy = qite.energy_trace.empty() ? 0.0 : qite.energy_trace.back();
  rec.safety_net_cost = safety_in_topk
                            ? exact[static_cast<std::size_t>(std::distance(
                                  candidates.begin(),
                                  std::find(candidates.begin(), candidates.end(), bh_code)))]
                            : exact.back();
  rec.x_start = x_k;
  rec.qite_energy_trace = qite.energy_trace;
  return rec;
}

RunLog run_simulation(const scenario::Scenario& scen, const PipelineSettings& settings,
                      const Executor& exec) {
  RunLog log;
  Eigen::VectorXd x = scen.initial_state();
  double t = 0.0;
  const int max_epochs = static_cast<int>(
      std::ceil(settings.max_time / settings.redesign_interval - 1e-12));
  const int log_grid = std::max(2, settings.log_grid_factor * settings.n_grid);

  for (int k = 0; k < max_epochs; ++k) {
    Rng epoch_rng(Rng::derive(settings.master_seed, static_cast<std::uint64_t>(k)));
    EpochRecord rec = run_epoch(x, t, scen, settings, epoch_rng, exec);
    rec.index = k;

    const double t_next = std::min((k + 1) * settings.redesign_interval, settings.max_time);
    x = append_segment(log, scen, rec.design, x, t, t_next, log_grid, settings);
    t = t_next;
    log.epochs.push_back(std::move(rec));

    if (scen.stop_condition(x, t)) {
      log.terminated_early = true;
      log.termination_reason = "stop condition satisfied";
      break;
    }
  }
  return log;
}

RunLog run_fixed_baseline(const scenario::Scenario& scen, const DesignVector& design,
                          double horizon, const PipelineSettings& settings,
                          const Executor& exec) {
  (void)exec;
  RunLog log;
  Eigen::VectorXd x = scen.initial_state();
  double t = 0.0;

  if (horizon <= 0.0) {
    // Log just the initial sample.
    log.trajectory.times.resize(1);
    log.trajectory.times(0) = 0.0;
    log.trajectory.states.resize(1, x.size());
    log.trajectory.states.row(0) = x.transpose();
    log.trajectory.controls.resize(1, scen.control_dim());
    Eigen::VectorXd dx, u;
    scen.eval(x, 0.0, design, dx, u);
    log.trajectory.controls.row(0) = u.transpose();
    log.v_values.push_back(lyapunov::eval_V(scen.candidate(design), x, 0.0));
    return log;
  }

  const int log_grid = std::max(2, settings.log_grid_factor * settings.n_grid);
  int k = 0;
  while (t < horizon - 1e-12) {
    const double t_next = std::min(t + settings.redesign_interval, horizon);
    EpochRecord rec;
    rec.index = k++;
    rec.t_start = t;
    rec.design = design;
    rec.x_start = x;
    rec.error_metric = scen.error_metric(x, t);
    rec.exact_cost = cost::penalized_cost(design, make_context(x, t, settings), scen,
                                          settings.stability, settings.weights);
    rec.safety_net_cost = rec.exact_cost;
    x = append_segment(log, scen, design, x, t, t_next, log_grid, settings);
    t = t_next;
    log.epochs.push_back(std::move(rec));
  }
  return log;
}

BruteResult brute_force_epoch(const blackhole::SearchRegion& region,
                              const encoding::BitAllocation& alloc,
                              const cost::EpochContext& ctx, const scenario::Scenario& scen,
                              const lyapunov::StabilitySpec& spec,
                              const cost::CostWeights& w, const Executor& exec) {
  const std::uint64_t dim = std::uint64_t{1} << alloc.n_total;
  std::vector<double> costs(dim);
  exec.parallel_for(dim, [&](std::size_t i) {
    const encoding::Bitstring b =
        encoding::basis_index_to_bits(static_cast<std::uint64_t>(i), alloc.n_total);
    costs[i] = cost::exact_bit_cost(b, alloc, region, ctx, scen, spec, w);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < dim; ++i)
    if (costs[i] < costs[best]) best = i;
  BruteResult r;
  r.min_cost = costs[best];
  r.argmin = encoding::basis_index_to_bits(best, alloc.n_total);
  return r;
}

}  // namespace qcd::codesign
