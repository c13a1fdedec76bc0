#include "qcd/scenario.hpp"

#include <cmath>

#include "qcd/errors.hpp"

namespace qcd::scenario {

namespace {

class FirstOrderScenario final : public Scenario {
 public:
  explicit FirstOrderScenario(const FirstOrderSettings& s)
      : settings_(s), graph_(plants::ring_laplacian(s.n_agents)) {}

  std::string name() const override { return "consensus1"; }
  int state_dim() const override { return settings_.n_agents; }
  int control_dim() const override { return settings_.n_agents; }
  int param_dim() const override { return 5; }
  int controller_dim() const override { return 3; }
  std::vector<std::string> param_names() const override {
    return {"alpha", "beta", "k", "theta2", "theta4"};
  }
  std::vector<std::string> state_names() const override {
    std::vector<std::string> out;
    for (int i = 0; i < settings_.n_agents; ++i) out.push_back("x" + std::to_string(i + 1));
    return out;
  }
  std::vector<std::string> control_names() const override {
    std::vector<std::string> out;
    for (int i = 0; i < settings_.n_agents; ++i) out.push_back("u" + std::to_string(i + 1));
    return out;
  }

  Eigen::VectorXd initial_state() const override { return settings_.x0; }
  blackhole::SearchRegion initial_region() const override {
    return blackhole::SearchRegion::from_bounds(settings_.interval_lower,
                                                settings_.interval_upper);
  }

  void eval(const Eigen::VectorXd& x, double, const DesignVector& p,
            Eigen::VectorXd& dx, Eigen::VectorXd& u) const override {
    plants::FirstOrderParams fp{p(0), p(1), p(2)};
    plants::first_order_rhs(x, fp, graph_, dx, u);
  }

  Eigen::VectorXd error_vec(const Eigen::VectorXd& x, double,
                            const DesignVector&) const override {
    return graph_.laplacian * x;
  }

  lyapunov::Candidate candidate(const DesignVector& p) const override {
    return lyapunov::make_first_order(p.tail(2));
  }

  double error_metric(const Eigen::VectorXd& x, double) const override {
    return (graph_.laplacian * x).norm();
  }

  bool stop_condition(const Eigen::VectorXd& x, double t) const override {
    return error_metric(x, t) <= settings_.stop_threshold;
  }

 private:
  FirstOrderSettings settings_;
  plants::RingGraph graph_;
};

class SecondOrderScenario final : public Scenario {
 public:
  explicit SecondOrderScenario(const SecondOrderSettings& s)
      : settings_(s), graph_(plants::ring_laplacian(s.n_agents)) {}

  std::string name() const override { return "consensus2"; }
  int state_dim() const override { return 2 * settings_.n_agents; }
  int control_dim() const override { return settings_.n_agents; }
  int param_dim() const override { return 5; }
  int controller_dim() const override { return 2; }
  std::vector<std::string> param_names() const override {
    return {"kp", "kd", "theta_x2", "theta_v2", "theta_x4"};
  }
  std::vector<std::string> state_names() const override {
    std::vector<std::string> out;
    for (int i = 0; i < settings_.n_agents; ++i) out.push_back("x" + std::to_string(i + 1));
    for (int i = 0; i < settings_.n_agents; ++i) out.push_back("v" + std::to_string(i + 1));
    return out;
  }
  std::vector<std::string> control_names() const override {
    std::vector<std::string> out;
    for (int i = 0; i < settings_.n_agents; ++i) out.push_back("u" + std::to_string(i + 1));
    return out;
  }

  Eigen::VectorXd initial_state() const override {
    Eigen::VectorXd z(2 * settings_.n_agents);
    z << settings_.x0, settings_.v0;
    return z;
  }
  blackhole::SearchRegion initial_region() const override {
    return blackhole::SearchRegion::from_bounds(settings_.interval_lower,
                                                settings_.interval_upper);
  }

  void eval(const Eigen::VectorXd& z, double, const DesignVector& p,
            Eigen::VectorXd& dz, Eigen::VectorXd& u) const override {
    plants::SecondOrderParams sp{p(0), p(1), settings_.drag_a, settings_.drag_b};
    plants::second_order_rhs(z, sp, graph_, dz, u);
  }

  Eigen::VectorXd error_vec(const Eigen::VectorXd& z, double,
                            const DesignVector&) const override {
    const int n = settings_.n_agents;
    Eigen::VectorXd e(2 * n);
    e.head(n) = graph_.laplacian * z.head(n);
    e.tail(n) = graph_.laplacian * z.tail(n);
    return e;
  }

  lyapunov::Candidate candidate(const DesignVector& p) const override {
    return lyapunov::make_second_order(p.tail(3), graph_.laplacian);
  }

  double error_metric(const Eigen::VectorXd& z, double t) const override {
    return error_vec(z, t, DesignVector()).norm();
  }

  bool stop_condition(const Eigen::VectorXd& z, double t) const override {
    return error_metric(z, t) <= settings_.stop_threshold;
  }

 private:
  SecondOrderSettings settings_;
  plants::RingGraph graph_;
};

class MotorScenario final : public Scenario {
 public:
  explicit MotorScenario(const MotorSettings& s) : settings_(s) {}

  std::string name() const override { return "motor"; }
  int state_dim() const override { return 5; }
  int control_dim() const override { return 2; }
  int param_dim() const override { return 4; }
  int controller_dim() const override { return 2; }
  std::vector<std::string> param_names() const override {
    return {"k_psi", "k_omega", "theta_psi", "theta_omega"};
  }
  std::vector<std::string> state_names() const override {
    return {"i_salpha", "i_sbeta", "lam_ralpha", "lam_rbeta", "omega"};
  }
  std::vector<std::string> control_names() const override { return {"u_alpha", "u_beta"}; }

  Eigen::VectorXd initial_state() const override { return settings_.x0; }
  blackhole::SearchRegion initial_region() const override {
    return blackhole::SearchRegion::from_bounds(settings_.interval_lower,
                                                settings_.interval_upper);
  }

  void eval(const Eigen::VectorXd& x, double t, const DesignVector& p,
            Eigen::VectorXd& dx, Eigen::VectorXd& u) const override {
    plants::motor_rhs(x, design(p), settings_.refs, settings_.plant, settings_.nominal, t,
                      dx, u);
  }

  Eigen::VectorXd error_vec(const Eigen::VectorXd& x, double t,
                            const DesignVector& p) const override {
    const plants::FocResult c =
        plants::foc_control(x, design(p), settings_.refs, settings_.nominal, t);
    Eigen::VectorXd e(4);
    e << std::sqrt(settings_.w_flux_error) * c.e_psi,
        std::sqrt(settings_.w_speed_error) * c.e_omega,
        std::sqrt(settings_.w_current_error) * c.e1,
        std::sqrt(settings_.w_current_error) * c.e2;
    return e;
  }

  lyapunov::Candidate candidate(const DesignVector& p) const override {
    return lyapunov::make_motor(p.tail(2), design(p), settings_.refs, settings_.nominal);
  }

  double error_metric(const Eigen::VectorXd& x, double t) const override {
    return std::abs(x(4) - settings_.refs.speed_ref(t));
  }

  bool stop_condition(const Eigen::VectorXd&, double) const override { return false; }

 private:
  static plants::MotorDesign design(const DesignVector& p) { return {p(0), p(1)}; }

  MotorSettings settings_;
};

}  // namespace

std::unique_ptr<Scenario> make_first_order(const FirstOrderSettings& s) {
  return std::make_unique<FirstOrderScenario>(s);
}
std::unique_ptr<Scenario> make_second_order(const SecondOrderSettings& s) {
  return std::make_unique<SecondOrderScenario>(s);
}
std::unique_ptr<Scenario> make_motor(const MotorSettings& s) {
  return std::make_unique<MotorScenario>(s);
}

}  // namespace qcd::scenario
