#pragma once

#include <Eigen/Dense>
#include <variant>

#include "qcd/plants.hpp"

namespace qcd::lyapunov {

// V(x) = theta2/2 ||x||^2 + theta4/4 sum x_i^4, theta = (theta2, theta4).
struct FirstOrderQuartic {};

// V(z) = thx2/2 ||Lx||^2 + thv2/2 ||Lv||^2 + thx4/4 sum (Lx)_i^4,
// theta = (thx2, thv2, thx4), z = [x; v].
struct SecondOrderDisagreement {
  Eigen::MatrixXd laplacian;
};

// V = th_psi e_psi^2 + th_omega e_omega^2 + e1^2 + e2^2 with the tracking
// errors reconstructed from the full state through the control law, so V
// depends on the evaluation time via the references.
struct MotorTracking {
  plants::MotorDesign design;
  plants::MotorReferences refs;
  plants::MotorParams nominal;
};

struct Candidate {
  Eigen::VectorXd theta;
  std::variant<FirstOrderQuartic, SecondOrderDisagreement, MotorTracking> form;
};

Candidate make_first_order(const Eigen::VectorXd& theta);
Candidate make_second_order(const Eigen::VectorXd& theta, const Eigen::MatrixXd& laplacian);
Candidate make_motor(const Eigen::VectorXd& theta, const plants::MotorDesign& d,
                     const plants::MotorReferences& refs, const plants::MotorParams& nominal);

// Candidate value at state x (time matters only for the motor form).
double eval_V(const Candidate& cand, const Eigen::VectorXd& x, double t = 0.0);

// Analytic gradient; defined for the two consensus forms.
Eigen::VectorXd grad_V(const Candidate& cand, const Eigen::VectorXd& x);

// Derivative along the flow, grad V(x) . dx (consensus forms only; the motor
// form is differentiated numerically along simulated trajectories).
double eval_Vdot(const Candidate& cand, const Eigen::VectorXd& x, const Eigen::VectorXd& dx);

// Coordinates whose vanishing marks the shifted equilibrium; samples with a
// small norm here are excluded from the strict-inequality penalties.
Eigen::VectorXd shifted_coordinates(const Candidate& cand, const Eigen::VectorXd& x, double t);

// Whether eval_Vdot is available (false for the motor form).
bool has_analytic_vdot(const Candidate& cand);

// ---------------------------------------------------------------------------
// Stability decay specifications
// ---------------------------------------------------------------------------

enum class StabilityKind { asymptotic, exponential, finite_time, fixed_time };

struct StabilitySpec {
  StabilityKind kind = StabilityKind::asymptotic;
  double alpha = 1.0;  // exponential rate
  double c = 1.0;      // finite-time gain
  double gamma = 0.5;  // finite-time exponent, in (0,1)
  double a = 1.0;      // fixed-time gains / exponents
  double b = 1.0;
  double p = 0.5;      // in (0,1)
  double q = 2.0;      // > 1
};

// Decay expression Psi; Psi <= 0 means the sampled decay condition holds.
double decay_expression(const StabilitySpec& spec, double V, double Vdot);

}  // namespace qcd::lyapunov
