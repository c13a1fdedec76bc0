#include "qcd/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcd/errors.hpp"

namespace qcd::integrate {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0,
                 kC5 = 8.0 / 9.0;

constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kA71 = 35.0 / 384.0, kA73 = 500.0 / 1113.0,
                 kA74 = 125.0 / 192.0, kA75 = -2187.0 / 6784.0,
                 kA76 = 11.0 / 84.0;

// b - b_hat (5th-order solution minus the embedded 4th-order one).
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0,
                 kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

// Coefficients of the order-4 continuous extension.
constexpr double kD1 = -12715105075.0 / 11282082432.0;
constexpr double kD3 = 87487479700.0 / 32700410799.0;
constexpr double kD4 = -10690763975.0 / 1880347072.0;
constexpr double kD5 = 701980252875.0 / 199316789632.0;
constexpr double kD6 = -1453857185.0 / 822651844.0;
constexpr double kD7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;
constexpr double kBeta = 0.04;                 // PI stabilization
constexpr double kExpo = 0.2 - 0.75 * kBeta;   // error exponent

struct DenseSegment {
  // y(t0 + s*h) = r1 + s*(r2 + (1-s)*(r3 + s*(r4 + (1-s)*r5)))
  Eigen::VectorXd r1, r2, r3, r4, r5;
};

}  // namespace

Trajectory rk45_integrate(const Rhs& rhs, const Eigen::VectorXd& x0,
                          double t_start, double t_end, int n_grid,
                          double rtol, double atol) {
  if (!(t_end > t_start)) throw std::invalid_argument("rk45: t_end must exceed t_start");
  if (n_grid < 2) throw std::invalid_argument("rk45: n_grid must be >= 2");
  if (!(rtol > 0.0) || !(atol > 0.0)) throw std::invalid_argument("rk45: tolerances must be positive");
  if (!x0.allFinite()) throw NonFiniteState("rk45: non-finite initial state");

  const Eigen::Index n = x0.size();
  const double span = t_end - t_start;
  const double h_min = 1e-14 * span;

  Trajectory out;
  out.times.resize(n_grid);
  const double dt = span / static_cast<double>(n_grid - 1);
  for (int i = 0; i < n_grid; ++i) out.times(i) = t_start + dt * i;
  out.times(n_grid - 1) = t_end;
  out.states.resize(n_grid, n);
  out.states.row(0) = x0.transpose();

  Eigen::VectorXd x = x0;
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  Eigen::VectorXd xs(n), x_new(n), err_vec(n);
  DenseSegment seg;

  double t = t_start;
  double h = 1e-3 * span;
  double err_prev = 1e-4;  // memory of the PI controller
  int next_grid = 1;

  rhs(t, x, k1);
  if (!k1.allFinite()) throw NonFiniteState("rk45: non-finite derivative");

  while (next_grid < n_grid) {
    bool last = false;
    if (t + h >= t_end) {
      h = t_end - t;
      last = true;
    }
    if (h < h_min) throw StepSizeUnderflow("rk45: step size underflow");

    xs = x + h * (kA21 * k1);
    rhs(t + kC2 * h, xs, k2);
    xs = x + h * (kA31 * k1 + kA32 * k2);
    rhs(t + kC3 * h, xs, k3);
    xs = x + h * (kA41 * k1 + kA42 * k2 + kA43 * k3);
    rhs(t + kC4 * h, xs, k4);
    xs = x + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4);
    rhs(t + kC5 * h, xs, k5);
    xs = x + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5);
    rhs(t + h, xs, k6);
    x_new = x + h * (kA71 * k1 + kA73 * k3 + kA74 * k4 + kA75 * k5 + kA76 * k6);
    rhs(t + h, x_new, k7);  // FSAL stage

    if (!x_new.allFinite() || !k7.allFinite())
      throw NonFiniteState("rk45: non-finite state during step");

    err_vec = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
    double err = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc = atol + rtol * std::max(std::abs(x(i)), std::abs(x_new(i)));
      const double r = err_vec(i) / sc;
      err += r * r;
    }
    err = std::sqrt(err / static_cast<double>(n));

    if (err <= 1.0) {
      // Accepted: build the continuous extension and fill covered grid points.
      const double t_new = last ? t_end : t + h;
      seg.r1 = x;
      seg.r2 = x_new - x;
      seg.r3 = h * k1 - seg.r2;
      seg.r4 = seg.r2 - h * k7 - seg.r3;
      seg.r5 = h * (kD1 * k1 + kD3 * k3 + kD4 * k4 + kD5 * k5 + kD6 * k6 + kD7 * k7);
      while (next_grid < n_grid && out.times(next_grid) <= t_new) {
        double s = (out.times(next_grid) - t) / h;
        s = std::clamp(s, 0.0, 1.0);
        out.states.row(next_grid) =
            (seg.r1 + s * (seg.r2 + (1.0 - s) * (seg.r3 + s * (seg.r4 + (1.0 - s) * seg.r5))))
                .transpose();
        ++next_grid;
      }
      out.accepted_times.push_back(t_new);
      t = t_new;
      x = x_new;
      k1 = k7;

      double factor;
      if (err == 0.0) {
        factor = kMaxFactor;
      } else {
        factor = kSafety * std::pow(err, -kExpo) * std::pow(err_prev, kBeta);
        factor = std::clamp(factor, kMinFactor, kMaxFactor);
      }
      err_prev = std::max(err, 1e-4);
      h *= factor;
    } else {
      // Rejected: shrink only.
      const double factor = std::clamp(kSafety * std::pow(err, -kExpo), kMinFactor, 1.0);
      h *= factor;
    }
  }

  if (!out.states.allFinite()) throw NonFiniteState("rk45: non-finite output");
  return out;
}

}  // namespace qcd::integrate
