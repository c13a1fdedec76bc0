#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "qcd/blackhole.hpp"
#include "qcd/lyapunov.hpp"
#include "qcd/plants.hpp"

namespace qcd::scenario {

using DesignVector = blackhole::DesignVector;

// One case study: plant dynamics closed by a design vector, the performance
// error signal, the Lyapunov candidate family and the stopping rule.
class Scenario {
 public:
  virtual ~Scenario() = default;

  virtual std::string name() const = 0;
  virtual int state_dim() const = 0;
  virtual int control_dim() const = 0;
  virtual int param_dim() const = 0;
  virtual int controller_dim() const = 0;  // leading controller-gain count
  virtual std::vector<std::string> param_names() const = 0;
  virtual std::vector<std::string> state_names() const = 0;
  virtual std::vector<std::string> control_names() const = 0;

  virtual Eigen::VectorXd initial_state() const = 0;
  virtual blackhole::SearchRegion initial_region() const = 0;

  // Closed-loop flow and reconstructed control at (x, t) under design p.
  virtual void eval(const Eigen::VectorXd& x, double t, const DesignVector& p,
                    Eigen::VectorXd& dx, Eigen::VectorXd& u) const = 0;

  // Performance-error vector entering the quadratic stage cost; component
  // weights beyond the global error weight are folded in here.
  virtual Eigen::VectorXd error_vec(const Eigen::VectorXd& x, double t,
                                    const DesignVector& p) const = 0;

  virtual lyapunov::Candidate candidate(const DesignVector& p) const = 0;

  // Scalar convergence metric logged per epoch.
  virtual double error_metric(const Eigen::VectorXd& x, double t) const = 0;

  // True once the run may stop early (always false for time-limited runs).
  virtual bool stop_condition(const Eigen::VectorXd& x, double t) const = 0;
};

struct FirstOrderSettings {
  int n_agents = 5;
  Eigen::VectorXd x0;  // defaults to the five-agent study values
  Eigen::VectorXd interval_lower;
  Eigen::VectorXd interval_upper;
  double stop_threshold = 1e-8;
};

struct SecondOrderSettings {
  int n_agents = 5;
  Eigen::VectorXd x0;
  Eigen::VectorXd v0;
  Eigen::VectorXd interval_lower;
  Eigen::VectorXd interval_upper;
  double drag_a = 0.5;
  double drag_b = 0.05;
  double stop_threshold = 1e-4;
};

struct MotorSettings {
  plants::MotorParams nominal;
  plants::MotorParams plant;  // mismatched machine
  plants::MotorReferences refs;
  Eigen::VectorXd x0;
  Eigen::VectorXd interval_lower;
  Eigen::VectorXd interval_upper;
  double w_flux_error = 2.0;
  double w_speed_error = 10.0;
  double w_current_error = 10.0;
};

std::unique_ptr<Scenario> make_first_order(const FirstOrderSettings& s);
std::unique_ptr<Scenario> make_second_order(const SecondOrderSettings& s);
std::unique_ptr<Scenario> make_motor(const MotorSettings& s);

}  // namespace qcd::scenario
