#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qcd::plants {

// ---------------------------------------------------------------------------
// Consensus plants
// ---------------------------------------------------------------------------

struct RingGraph {
  int n_agents = 0;
  Eigen::MatrixXd laplacian;  // n x n, L = 2I - cycle adjacency
};

// Laplacian of the undirected n-cycle. Throws InvalidSize for n < 3.
RingGraph ring_laplacian(int n);

struct FirstOrderParams {
  double alpha = 0.0;
  double beta = 0.0;
  double k = 0.0;  // coupling gain
};

struct SecondOrderParams {
  double kp = 0.0;
  double kd = 0.0;
  double drag_a = 0.5;   // linear drag
  double drag_b = 0.05;  // quadratic drag
};

// Closed loop dx = (1-alpha)x + (1-beta)x^3 - k L x; the reported control is
// the feedback u = -alpha x - beta x^3 - k L x that closes dx = x + x^3 + u.
void first_order_rhs(const Eigen::VectorXd& x, const FirstOrderParams& p,
                     const RingGraph& g, Eigen::VectorXd& dx, Eigen::VectorXd& u);

// z = [x; v], dz = [v; -a v - b|v|v - Kp L x - Kd L v], u = -Kp L x - Kd L v.
void second_order_rhs(const Eigen::VectorXd& z, const SecondOrderParams& p,
                      const RingGraph& g, Eigen::VectorXd& dz, Eigen::VectorXd& u);

// ---------------------------------------------------------------------------
// Induction-motor drive
// ---------------------------------------------------------------------------

// Physical machine parameters. Derived coefficients are recomputed from the
// base fields on demand so the base fields stay the single source of truth.
struct MotorParams {
  double Rs = 2.3;          // stator resistance, ohm
  double Rr = 2.5;          // rotor resistance, ohm
  double Ls = 0.25;         // stator inductance, H
  double Lr = 0.25;         // rotor inductance, H
  double Lm = 0.24;         // magnetizing inductance, H
  double J = 0.003;         // rotor inertia, kg m^2
  int pole_pairs = 2;

  double l_sigma() const { return Ls - Lm * Lm / Lr; }
  double a_s() const { return Rs / l_sigma() + Rr * Lm * Lm / (l_sigma() * Lr * Lr); }
  double b_s() const { return Rr * Lm / (l_sigma() * Lr * Lr); }
  double c_s() const { return Lm / (l_sigma() * Lr); }
  double alpha_coef() const { return Rr * Lm / Lr; }
  double beta_coef() const { return -Rr / Lr; }
  double gamma_coef() const { return 3.0 * pole_pairs * Lm / (2.0 * J * Lr); }
};

// Outer-loop gains; the inner current-loop gains track the flux-loop gain.
struct MotorDesign {
  double k_psi = 0.0;
  double k_omega = 0.0;

  double k1() const { return 10.0 * k_psi; }
  double k2() const { return 10.0 * k_psi; }
};

// Reference commands: constant rotor-flux magnitude, piecewise-linear speed
// profile and a step load torque.
struct MotorReferences {
  double flux_ref = 0.9;    // Wb
  double psi_floor = 0.05;  // Wb, lower clamp for flux division
  std::vector<double> speed_knot_t{0.0, 0.8, 1.4, 2.0, 2.2};
  std::vector<double> speed_knot_w{0.0, 100.0, 100.0, 50.0, 50.0};
  double load_step_time = 0.5;
  double load_before = 0.0;  // N m
  double load_after = 1.0;   // N m

  double speed_ref(double t) const;
  double speed_ref_rate(double t) const;  // slope of the active segment
  double load_torque(double t) const { return t < load_step_time ? load_before : load_after; }
};

// Outputs of the rotor-flux-oriented control law at one state/time.
struct FocResult {
  double u_alpha = 0.0;
  double u_beta = 0.0;
  double e_psi = 0.0;
  double e_omega = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double id_ref = 0.0;  // desired d-axis current
  double iq_ref = 0.0;  // desired q-axis current
  double x1d = 0.0;     // desired stationary-frame currents
  double x2d = 0.0;
  double psi = 0.0;     // rotor-flux magnitude
};

// State convention: x = [i_salpha, i_sbeta, lam_ralpha, lam_rbeta, omega].
FocResult foc_control(const Eigen::VectorXd& x, const MotorDesign& d,
                      const MotorReferences& refs, const MotorParams& nominal, double t);

// Stationary-frame motor dynamics with plant-side coefficients; the input
// voltages come from foc_control evaluated with the nominal model.
void motor_rhs(const Eigen::VectorXd& x, const MotorDesign& d,
               const MotorReferences& refs, const MotorParams& plant,
               const MotorParams& nominal, double t,
               Eigen::VectorXd& dx, Eigen::VectorXd& u);

}  // namespace qcd::plants
