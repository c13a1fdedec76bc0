#include "qcd/cost.hpp"

#include <cmath>

#include "qcd/errors.hpp"

namespace qcd::cost {

double performance_integral(const integrate::Trajectory& traj,
                            const std::vector<Eigen::VectorXd>& errors,
                            const CostWeights& w) {
  const Eigen::Index n = traj.times.size();
  if (static_cast<Eigen::Index>(errors.size()) != n || traj.controls.rows() != n)
    throw LengthMismatch("performance_integral: grid mismatch");
  auto integrand = [&](Eigen::Index i) {
    return w.w_error * errors[static_cast<std::size_t>(i)].squaredNorm() +
           w.w_control * traj.controls.row(i).squaredNorm();
  };
  double total = 0.0;
  double prev = integrand(0);
  for (Eigen::Index i = 1; i < n; ++i) {
    const double cur = integrand(i);
    total += 0.5 * (prev + cur) * (traj.times(i) - traj.times(i - 1));
    prev = cur;
  }
  return total;
}

LyapunovPenalties lyapunov_penalties(const lyapunov::Candidate& cand,
                                     const lyapunov::StabilitySpec& spec,
                                     const integrate::Trajectory& traj,
                                     const std::vector<Eigen::VectorXd>& flows,
                                     double eps_margin) {
  const Eigen::Index n = traj.times.size();
  if (static_cast<Eigen::Index>(flows.size()) != n)
    throw LengthMismatch("lyapunov_penalties: grid mismatch");

  const bool analytic = lyapunov::has_analytic_vdot(cand);
  std::vector<double> v(static_cast<std::size_t>(n));
  std::vector<bool> include(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd x = traj.states.row(i).transpose();
    const double t = traj.times(i);
    v[static_cast<std::size_t>(i)] = lyapunov::eval_V(cand, x, t);
    include[static_cast<std::size_t>(i)] =
        lyapunov::shifted_coordinates(cand, x, t).norm() >= kEquilibriumTol;
  }

  LyapunovPenalties pen;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!include[static_cast<std::size_t>(i)]) continue;
    const double vi = v[static_cast<std::size_t>(i)];

    const double v_short = std::max(0.0, eps_margin - vi);
    pen.pi_v += v_short * v_short;

    double vdot;
    if (analytic) {
      const Eigen::VectorXd x = traj.states.row(i).transpose();
      vdot = lyapunov::eval_Vdot(cand, x, flows[static_cast<std::size_t>(i)]);
    } else {
      // Centered difference along the sampled trajectory; one-sided at the ends.
      const Eigen::Index lo = std::max<Eigen::Index>(0, i - 1);
      const Eigen::Index hi = std::min<Eigen::Index>(n - 1, i + 1);
      vdot = (v[static_cast<std::size_t>(hi)] - v[static_cast<std::size_t>(lo)]) /
             (traj.times(hi) - traj.times(lo));
    }
    const double psi = lyapunov::decay_expression(spec, vi, vdot);
    const double d_short = std::max(0.0, psi);
    pen.pi_vdot += d_short * d_short;
  }
  return pen;
}

double penalized_cost(const scenario::DesignVector& p, const EpochContext& ctx,
                      const scenario::Scenario& scen,
                      const lyapunov::StabilitySpec& spec, const CostWeights& w) {
  const scenario::DesignVector pc = scen.initial_region().clamp(p);

  try {
    integrate::Trajectory traj = integrate::rk45_integrate(
        [&](double t, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
          Eigen::VectorXd u;
          scen.eval(x, t, pc, dx, u);
        },
        ctx.x_start, ctx.t_start, ctx.t_start + ctx.horizon, ctx.n_grid, ctx.rtol,
        ctx.atol);

    const Eigen::Index n = traj.times.size();
    std::vector<Eigen::VectorXd> flows(static_cast<std::size_t>(n));
    std::vector<Eigen::VectorXd> errors(static_cast<std::size_t>(n));
    traj.controls.resize(n, scen.control_dim());
    for (Eigen::Index i = 0; i < n; ++i) {
      const Eigen::VectorXd x = traj.states.row(i).transpose();
      const double t = traj.times(i);
      Eigen::VectorXd dx, u;
      scen.eval(x, t, pc, dx, u);
      flows[static_cast<std::size_t>(i)] = dx;
      traj.controls.row(i) = u.transpose();
      errors[static_cast<std::size_t>(i)] = scen.error_vec(x, t, pc);
    }

    const double perf = performance_integral(traj, errors, w);
    const lyapunov::Candidate cand = scen.candidate(pc);
    const LyapunovPenalties pen = lyapunov_penalties(cand, spec, traj, flows, w.eps_margin);
    const double total = perf + w.w_lyap * (pen.pi_v + pen.pi_vdot);
    if (!std::isfinite(total)) return kBarrierCost;
    return total;
  } catch (const Error&) {
    return kBarrierCost;
  }
}

double exact_bit_cost(const encoding::Bitstring& b, const encoding::BitAllocation& alloc,
                      const blackhole::SearchRegion& region, const EpochContext& ctx,
                      const scenario::Scenario& scen,
                      const lyapunov::StabilitySpec& spec, const CostWeights& w) {
  return penalized_cost(encoding::decode(b, alloc, region), ctx, scen, spec, w);
}

}  // namespace qcd::cost
