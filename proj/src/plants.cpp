#include "qcd/plants.hpp"

#include <cmath>

#include "qcd/errors.hpp"

namespace qcd::plants {

RingGraph ring_laplacian(int n) {
  if (n < 3) throw InvalidSize("ring_laplacian: need at least 3 agents");
  RingGraph g;
  g.n_agents = n;
  g.laplacian = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    g.laplacian(i, i) = 2.0;
    g.laplacian(i, (i + 1) % n) = -1.0;
    g.laplacian(i, (i + n - 1) % n) = -1.0;
  }
  return g;
}

void first_order_rhs(const Eigen::VectorXd& x, const FirstOrderParams& p,
                     const RingGraph& g, Eigen::VectorXd& dx, Eigen::VectorXd& u) {
  const Eigen::VectorXd cube = x.array().cube().matrix();
  const Eigen::VectorXd coupling = p.k * (g.laplacian * x);
  dx = (1.0 - p.alpha) * x + (1.0 - p.beta) * cube - coupling;
  u = -p.alpha * x - p.beta * cube - coupling;
}

void second_order_rhs(const Eigen::VectorXd& z, const SecondOrderParams& p,
                      const RingGraph& g, Eigen::VectorXd& dz, Eigen::VectorXd& u) {
  const int n = g.n_agents;
  const auto x = z.head(n);
  const auto v = z.tail(n);
  u = -p.kp * (g.laplacian * x) - p.kd * (g.laplacian * v);
  dz.resize(2 * n);
  dz.head(n) = v;
  dz.tail(n) = -p.drag_a * v - p.drag_b * (v.array().abs() * v.array()).matrix() + u;
}

double MotorReferences::speed_ref(double t) const {
  if (t <= speed_knot_t.front()) return speed_knot_w.front();
  for (std::size_t i = 1; i < speed_knot_t.size(); ++i) {
    if (t <= speed_knot_t[i]) {
      const double t0 = speed_knot_t[i - 1], t1 = speed_knot_t[i];
      const double w0 = speed_knot_w[i - 1], w1 = speed_knot_w[i];
      return w0 + (w1 - w0) * (t - t0) / (t1 - t0);
    }
  }
  return speed_knot_w.back();
}

double MotorReferences::speed_ref_rate(double t) const {
  if (t < speed_knot_t.front()) return 0.0;
  for (std::size_t i = 1; i < speed_knot_t.size(); ++i) {
    if (t < speed_knot_t[i]) {
      const double t0 = speed_knot_t[i - 1], t1 = speed_knot_t[i];
      return (speed_knot_w[i] - speed_knot_w[i - 1]) / (t1 - t0);
    }
  }
  return 0.0;
}

namespace {

// Desired stationary-frame currents for a frozen state at reference time t.
// Returns (x1d, x2d) plus the rotor-frame components.
struct DesiredCurrents {
  double x1d, x2d, id_ref, iq_ref;
};

DesiredCurrents desired_currents(double psi, double ed0, double ed1, double eq0,
                                 double eq1, double omega, const MotorDesign& d,
                                 const MotorReferences& refs,
                                 const MotorParams& nominal, double t) {
  const double psi_d = refs.flux_ref;
  const double e_psi = psi - psi_d;
  const double e_omega = omega - refs.speed_ref(t);

  // Flux reference is constant, so its rate is zero.
  const double id = (-nominal.beta_coef() * psi - d.k_psi * e_psi) / nominal.alpha_coef();
  const double psi_eff = std::max(psi, refs.psi_floor);
  const double iq = (refs.speed_ref_rate(t) + refs.load_torque(t) / nominal.J -
                     d.k_omega * e_omega) /
                    (nominal.gamma_coef() * psi_eff);

  return {id * ed0 + iq * eq0, id * ed1 + iq * eq1, id, iq};
}

}  // namespace

FocResult foc_control(const Eigen::VectorXd& x, const MotorDesign& d,
                      const MotorReferences& refs, const MotorParams& nominal,
                      double t) {
  FocResult r;
  const double isa = x(0), isb = x(1), lra = x(2), lrb = x(3), omega = x(4);

  r.psi = std::sqrt(lra * lra + lrb * lrb);
  double ed0 = 1.0, ed1 = 0.0, eq0 = 0.0, eq1 = 1.0;
  if (r.psi >= refs.psi_floor) {
    ed0 = lra / r.psi;
    ed1 = lrb / r.psi;
    eq0 = -lrb / r.psi;
    eq1 = lra / r.psi;
  }

  r.e_psi = r.psi - refs.flux_ref;
  r.e_omega = omega - refs.speed_ref(t);

  const DesiredCurrents dc =
      desired_currents(r.psi, ed0, ed1, eq0, eq1, omega, d, refs, nominal, t);
  r.id_ref = dc.id_ref;
  r.iq_ref = dc.iq_ref;
  r.x1d = dc.x1d;
  r.x2d = dc.x2d;

  r.e1 = isa - r.x1d;
  r.e2 = isb - r.x2d;

  // Desired-current derivatives: central difference over the reference time
  // with the state (flux frame, speed) frozen.
  const double h = 1e-5;
  const DesiredCurrents fwd =
      desired_currents(r.psi, ed0, ed1, eq0, eq1, omega, d, refs, nominal, t + h);
  const DesiredCurrents bwd =
      desired_currents(r.psi, ed0, ed1, eq0, eq1, omega, d, refs, nominal, t - h);
  const double x1d_dot = (fwd.x1d - bwd.x1d) / (2.0 * h);
  const double x2d_dot = (fwd.x2d - bwd.x2d) / (2.0 * h);

  const double ls = nominal.l_sigma();
  r.u_alpha = ls * (x1d_dot + nominal.a_s() * isa - nominal.b_s() * lra -
                    nominal.c_s() * omega * lrb - d.k1() * r.e1);
  r.u_beta = ls * (x2d_dot + nominal.a_s() * isb - nominal.b_s() * lrb +
                   nominal.c_s() * omega * lra - d.k2() * r.e2);
  return r;
}

void motor_rhs(const Eigen::VectorXd& x, const MotorDesign& d,
               const MotorReferences& refs, const MotorParams& plant,
               const MotorParams& nominal, double t,
               Eigen::VectorXd& dx, Eigen::VectorXd& u) {
  const FocResult c = foc_control(x, d, refs, nominal, t);
  u.resize(2);
  u(0) = c.u_alpha;
  u(1) = c.u_beta;

  const double isa = x(0), isb = x(1), lra = x(2), lrb = x(3), omega = x(4);
  const double psi = std::sqrt(lra * lra + lrb * lrb);
  // q-axis current in the plant's rotor-flux frame.
  double iq = 0.0;
  if (psi > 0.0) iq = (-lrb * isa + lra * isb) / psi;

  dx.resize(5);
  dx(0) = -plant.a_s() * isa + plant.b_s() * lra + plant.c_s() * omega * lrb +
          c.u_alpha / plant.l_sigma();
  dx(1) = -plant.a_s() * isb + plant.b_s() * lrb - plant.c_s() * omega * lra +
          c.u_beta / plant.l_sigma();
  dx(2) = plant.alpha_coef() * isa + plant.beta_coef() * lra - omega * lrb;
  dx(3) = plant.alpha_coef() * isb + plant.beta_coef() * lrb + omega * lra;
  dx(4) = plant.gamma_coef() * psi * iq - refs.load_torque(t) / plant.J;
}

}  // namespace qcd::plants
