#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace qcd::integrate {

// Right-hand side: dx = f(t, x).
using Rhs = std::function<void(double, const Eigen::VectorXd&, Eigen::VectorXd&)>;

struct Trajectory {
  Eigen::VectorXd times;      // n_grid, uniform, times(0)=t_start, times(last)=t_end
  Eigen::MatrixXd states;     // n_grid x n_state
  Eigen::MatrixXd controls;   // n_grid x n_input, filled by the caller
  std::vector<double> accepted_times;  // right endpoints of accepted steps
};

// Adaptive Dormand-Prince 5(4) with dense output on a uniform grid.
// Throws StepSizeUnderflow when the step falls below 1e-14*(t_end-t_start)
// and NonFiniteState when any state component becomes non-finite.
Trajectory rk45_integrate(const Rhs& rhs, const Eigen::VectorXd& x0,
                          double t_start, double t_end, int n_grid,
                          double rtol, double atol);

}  // namespace qcd::integrate
