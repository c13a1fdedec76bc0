#include "qcd/lyapunov.hpp"

#include <cmath>

#include "qcd/errors.hpp"

namespace qcd::lyapunov {

Candidate make_first_order(const Eigen::VectorXd& theta) {
  if (theta.size() != 2) throw LengthMismatch("first-order candidate needs 2 coefficients");
  return Candidate{theta, FirstOrderQuartic{}};
}

Candidate make_second_order(const Eigen::VectorXd& theta, const Eigen::MatrixXd& laplacian) {
  if (theta.size() != 3) throw LengthMismatch("second-order candidate needs 3 coefficients");
  return Candidate{theta, SecondOrderDisagreement{laplacian}};
}

Candidate make_motor(const Eigen::VectorXd& theta, const plants::MotorDesign& d,
                     const plants::MotorReferences& refs, const plants::MotorParams& nominal) {
  if (theta.size() != 2) throw LengthMismatch("motor candidate needs 2 coefficients");
  return Candidate{theta, MotorTracking{d, refs, nominal}};
}

double eval_V(const Candidate& cand, const Eigen::VectorXd& x, double t) {
  return std::visit(
      [&](const auto& form) -> double {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, FirstOrderQuartic>) {
          const double quad = x.squaredNorm();
          const double quart = x.array().pow(4).sum();
          return 0.5 * cand.theta(0) * quad + 0.25 * cand.theta(1) * quart;
        } else if constexpr (std::is_same_v<T, SecondOrderDisagreement>) {
          const int n = static_cast<int>(form.laplacian.rows());
          const Eigen::VectorXd lx = form.laplacian * x.head(n);
          const Eigen::VectorXd lv = form.laplacian * x.tail(n);
          return 0.5 * cand.theta(0) * lx.squaredNorm() +
                 0.5 * cand.theta(1) * lv.squaredNorm() +
                 0.25 * cand.theta(2) * lx.array().pow(4).sum();
        } else {
          const plants::FocResult c = plants::foc_control(x, form.design, form.refs, form.nominal, t);
          return cand.theta(0) * c.e_psi * c.e_psi + cand.theta(1) * c.e_omega * c.e_omega +
                 c.e1 * c.e1 + c.e2 * c.e2;
        }
      },
      cand.form);
}

Eigen::VectorXd grad_V(const Candidate& cand, const Eigen::VectorXd& x) {
  return std::visit(
      [&](const auto& form) -> Eigen::VectorXd {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, FirstOrderQuartic>) {
          return cand.theta(0) * x + cand.theta(1) * x.array().cube().matrix();
        } else if constexpr (std::is_same_v<T, SecondOrderDisagreement>) {
          const int n = static_cast<int>(form.laplacian.rows());
          const Eigen::VectorXd lx = form.laplacian * x.head(n);
          const Eigen::VectorXd lv = form.laplacian * x.tail(n);
          Eigen::VectorXd g(2 * n);
          g.head(n) = form.laplacian.transpose() *
                      (cand.theta(0) * lx + cand.theta(2) * lx.array().cube().matrix());
          g.tail(n) = form.laplacian.transpose() * (cand.theta(1) * lv);
          return g;
        } else {
          throw DomainError("motor candidate has no analytic gradient");
        }
      },
      cand.form);
}

double eval_Vdot(const Candidate& cand, const Eigen::VectorXd& x, const Eigen::VectorXd& dx) {
  return grad_V(cand, x).dot(dx);
}

Eigen::VectorXd shifted_coordinates(const Candidate& cand, const Eigen::VectorXd& x, double t) {
  return std::visit(
      [&](const auto& form) -> Eigen::VectorXd {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, FirstOrderQuartic>) {
          return x;
        } else if constexpr (std::is_same_v<T, SecondOrderDisagreement>) {
          const int n = static_cast<int>(form.laplacian.rows());
          Eigen::VectorXd s(2 * n);
          s.head(n) = form.laplacian * x.head(n);
          s.tail(n) = form.laplacian * x.tail(n);
          return s;
        } else {
          const plants::FocResult c = plants::foc_control(x, form.design, form.refs, form.nominal, t);
          Eigen::VectorXd s(4);
          s << c.e_psi, c.e_omega, c.e1, c.e2;
          return s;
        }
      },
      cand.form);
}

bool has_analytic_vdot(const Candidate& cand) {
  return !std::holds_alternative<MotorTracking>(cand.form);
}

double decay_expression(const StabilitySpec& spec, double V, double Vdot) {
  switch (spec.kind) {
    case StabilityKind::asymptotic:
      return Vdot;
    case StabilityKind::exponential:
      return Vdot + spec.alpha * V;
    case StabilityKind::finite_time:
      if (V < 0.0) throw DomainError("decay_expression: V < 0 with fractional exponent");
      return Vdot + spec.c * std::pow(V, spec.gamma);
    case StabilityKind::fixed_time:
      if (V < 0.0) throw DomainError("decay_expression: V < 0 with fractional exponent");
      return Vdot + spec.a * std::pow(V, spec.p) + spec.b * std::pow(V, spec.q);
  }
  throw DomainError("decay_expression: unknown stability kind");
}

}  // namespace qcd::lyapunov
