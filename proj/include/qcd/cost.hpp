#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qcd/encoding.hpp"
#include "qcd/integrate.hpp"
#include "qcd/lyapunov.hpp"
#include "qcd/scenario.hpp"

namespace qcd::cost {

// Returned instead of the objective whenever the closed-loop simulation
// fails, so population methods keep running.
inline constexpr double kBarrierCost = 1e12;

// Samples closer than this to the shifted equilibrium are excluded from the
// strict-inequality penalties.
inline constexpr double kEquilibriumTol = 1e-9;

struct CostWeights {
  double w_error = 1.0;    // weight on the squared performance error
  double w_control = 0.1;  // weight on the squared control effort
  double w_lyap = 1.0;     // multiplies both Lyapunov penalties
  double eps_margin = 1e-6;
};

struct EpochContext {
  double t_start = 0.0;
  Eigen::VectorXd x_start;
  double horizon = 0.25;
  int n_grid = 150;
  double rtol = 1e-6;
  double atol = 1e-8;
};

// Trapezoidal quadrature of w_error*||err_i||^2 + w_control*||u_i||^2 over
// the trajectory grid.
double performance_integral(const integrate::Trajectory& traj,
                            const std::vector<Eigen::VectorXd>& errors,
                            const CostWeights& w);

// Hinge-squared positivity and decay penalties over the grid samples.
// flows[i] must be the closed-loop derivative at the i-th sample; for the
// motor candidate the decay uses finite differences of V along the grid.
struct LyapunovPenalties {
  double pi_v = 0.0;
  double pi_vdot = 0.0;
};
LyapunovPenalties lyapunov_penalties(const lyapunov::Candidate& cand,
                                     const lyapunov::StabilitySpec& spec,
                                     const integrate::Trajectory& traj,
                                     const std::vector<Eigen::VectorXd>& flows,
                                     double eps_margin);

// Short-horizon penalized objective: simulate the closed loop under p,
// integrate the performance index and add the weighted Lyapunov penalties.
// Simulation failures (and non-finite accumulations) return kBarrierCost.
double penalized_cost(const scenario::DesignVector& p, const EpochContext& ctx,
                      const scenario::Scenario& scen,
                      const lyapunov::StabilitySpec& spec, const CostWeights& w);

// Exact objective on the binary domain: decode, then the penalized cost.
double exact_bit_cost(const encoding::Bitstring& b, const encoding::BitAllocation& alloc,
                      const blackhole::SearchRegion& region, const EpochContext& ctx,
                      const scenario::Scenario& scen,
                      const lyapunov::StabilitySpec& spec, const CostWeights& w);

}  // namespace qcd::cost
