#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcd/config.hpp"
#include "qcd/cost.hpp"
#include "qcd/errors.hpp"

using namespace qcd;

namespace {

cost::EpochContext consensus_ctx(const scenario::Scenario& scen) {
  cost::EpochContext ctx;
  ctx.x_start = scen.initial_state();
  ctx.horizon = 0.25;
  ctx.n_grid = 150;
  return ctx;
}

std::unique_ptr<scenario::Scenario> consensus1() {
  return config::build_scenario(config::defaults_for(config::ScenarioKind::consensus1));
}

}  // namespace

TEST_CASE("trapezoid of a constant integrand") {
  integrate::Trajectory traj;
  const int n = 11;
  traj.times.setLinSpaced(n, 0.0, 0.25);
  traj.states.setZero(n, 1);
  traj.controls.setZero(n, 1);
  std::vector<Eigen::VectorXd> errs(n, Eigen::VectorXd::Ones(1));  // ||e||^2 = 1

  cost::CostWeights w;
  w.w_error = 1.0;
  w.w_control = 0.0;
  CHECK(cost::performance_integral(traj, errs, w) == doctest::Approx(0.25).epsilon(1e-12));

  SUBCASE("all-zero signals integrate to zero") {
    std::vector<Eigen::VectorXd> zero(n, Eigen::VectorXd::Zero(1));
    CHECK(cost::performance_integral(traj, zero, w) == 0.0);
  }

  SUBCASE("control term scales linearly in its weight") {
    traj.controls.setConstant(n, 1, 2.0);
    cost::CostWeights w1, w2;
    w1.w_error = w2.w_error = 0.0;
    w1.w_control = 0.3;
    w2.w_control = 0.6;
    const double a = cost::performance_integral(traj, errs, w1);
    const double b = cost::performance_integral(traj, errs, w2);
    CHECK(b == doctest::Approx(2.0 * a).epsilon(1e-14));
  }
}

TEST_CASE("hinge penalties") {
  integrate::Trajectory traj;
  traj.times.resize(1);
  traj.times << 0.0;
  traj.states.resize(1, 5);
  traj.states << 1.0, 0.0, 0.0, 0.0, 0.0;
  std::vector<Eigen::VectorXd> flows{Eigen::VectorXd::Zero(5)};

  lyapunov::StabilitySpec spec;

  SUBCASE("feasible certificate contributes nothing") {
    // theta = (2, 0): V = 1 >> margin, flow 0 -> Vdot = 0 <= 0.
    Eigen::VectorXd theta(2);
    theta << 2.0, 0.0;
    const auto pen = cost::lyapunov_penalties(lyapunov::make_first_order(theta), spec, traj,
                                              flows, 1e-6);
    CHECK(pen.pi_v == 0.0);
    CHECK(pen.pi_vdot == 0.0);
  }

  SUBCASE("negative V hits the positivity hinge") {
    // theta = (-1, 0): V = -0.5 at e1.
    Eigen::VectorXd theta(2);
    theta << -1.0, 0.0;
    const auto pen = cost::lyapunov_penalties(lyapunov::make_first_order(theta), spec, traj,
                                              flows, 1e-6);
    const double expected = (0.5 + 1e-6) * (0.5 + 1e-6);
    CHECK(pen.pi_v == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("positive decay expression hits the decay hinge") {
    // theta = (2, 0), flow +e1: Vdot = 2*x.dx = 2 -> hinge^2 = 4.
    Eigen::VectorXd theta(2);
    theta << 2.0, 0.0;
    std::vector<Eigen::VectorXd> up{Eigen::VectorXd::Zero(5)};
    up[0](0) = 1.0;
    const auto pen =
        cost::lyapunov_penalties(lyapunov::make_first_order(theta), spec, traj, up, 1e-6);
    CHECK(pen.pi_vdot == doctest::Approx(4.0).epsilon(1e-12));
  }

  SUBCASE("lowering V below the margin strictly raises the positivity penalty") {
    Eigen::VectorXd weak(2), weaker(2);
    weak << 1e-7, 0.0;    // V = 5e-8 at e1, below the 1e-6 margin
    weaker << 5e-8, 0.0;  // V = 2.5e-8, lower still
    const double eps = 1e-6;
    const auto pen_weak =
        cost::lyapunov_penalties(lyapunov::make_first_order(weak), spec, traj, flows, eps);
    const auto pen_weaker =
        cost::lyapunov_penalties(lyapunov::make_first_order(weaker), spec, traj, flows, eps);
    CHECK(pen_weaker.pi_v > pen_weak.pi_v);
    CHECK(pen_weak.pi_v > 0.0);
  }

  SUBCASE("near-equilibrium samples are excluded") {
    integrate::Trajectory tiny = traj;
    tiny.states.row(0) *= 1e-12;
    Eigen::VectorXd theta(2);
    theta << -1.0, 0.0;  // would violate positivity if included
    const auto pen = cost::lyapunov_penalties(lyapunov::make_first_order(theta), spec, tiny,
                                              flows, 1e-6);
    CHECK(pen.pi_v == 0.0);
    CHECK(pen.pi_vdot == 0.0);
  }
}

TEST_CASE("penalized cost at the consensus point is zero") {
  const auto scen = consensus1();
  cost::EpochContext ctx = consensus_ctx(*scen);
  ctx.x_start.setZero();

  Eigen::VectorXd p(5);
  p << 2.0, 1.0, 5.0, 1.0, 1.0;
  lyapunov::StabilitySpec spec;
  cost::CostWeights w;
  CHECK(cost::penalized_cost(p, ctx, *scen, spec, w) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("zero performance weights and a feasible certificate give exactly zero") {
  const auto scen = consensus1();
  const cost::EpochContext ctx = consensus_ctx(*scen);
  // alpha=2, beta=1, k=5: contraction whose V is positive and decaying, so
  // both hinges stay at zero and only the (zero-weighted) performance term
  // could contribute.
  Eigen::VectorXd p(5);
  p << 2.0, 1.0, 5.0, 1.0, 1.0;
  lyapunov::StabilitySpec spec;
  cost::CostWeights w;
  w.w_error = 0.0;
  w.w_control = 0.0;
  w.w_lyap = 1.0;
  CHECK(cost::penalized_cost(p, ctx, *scen, spec, w) == 0.0);
}

TEST_CASE("repeat evaluation is bitwise identical") {
  const auto scen = consensus1();
  const cost::EpochContext ctx = consensus_ctx(*scen);
  Eigen::VectorXd p(5);
  p << 3.7, 0.9, 12.0, 4.0, 0.5;
  lyapunov::StabilitySpec spec;
  cost::CostWeights w;
  const double a = cost::penalized_cost(p, ctx, *scen, spec, w);
  const double b = cost::penalized_cost(p, ctx, *scen, spec, w);
  CHECK(a == b);
  CHECK(std::isfinite(a));
}

TEST_CASE("objective is never negative") {
  const auto scen = consensus1();
  const cost::EpochContext ctx = consensus_ctx(*scen);
  lyapunov::StabilitySpec spec;
  cost::CostWeights w;
  Rng rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    Eigen::VectorXd p(5);
    p << rng.uniform(0, 50), rng.uniform(0, 2), rng.uniform(0, 50), rng.uniform(0, 25),
        rng.uniform(0, 25);
    CHECK(cost::penalized_cost(p, ctx, *scen, spec, w) >= 0.0);
  }
}

TEST_CASE("with zero Lyapunov weight the objective is the performance discretization") {
  const auto scen = consensus1();
  const cost::EpochContext ctx = consensus_ctx(*scen);
  Eigen::VectorXd p(5);
  p << 4.0, 1.2, 8.0, 2.0, 2.0;
  lyapunov::StabilitySpec spec;
  cost::CostWeights w;
  w.w_lyap = 0.0;

  // Recompute the performance term independently on the same grid.
  auto traj = integrate::rk45_integrate(
      [&](double t, const Eigen::VectorXd& x, Eigen::VectorXd& dx) {
        Eigen::VectorXd u;
        scen->eval(x, t, p, dx, u);
      },
      ctx.x_start, ctx.t_start, ctx.t_start + ctx.horizon, ctx.n_grid, ctx.rtol, ctx.atol);
  const Eigen::Index n = traj.times.size();
  traj.controls.resize(n, scen->control_dim());
  std::vector<Eigen::VectorXd> errs(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd dx, u;
    const Eigen::VectorXd x = traj.states.row(i).transpose();
    scen->eval(x, traj.times(i), p, dx, u);
    traj.controls.row(i) = u.transpose();
    errs[static_cast<std::size_t>(i)] = scen->error_vec(x, traj.times(i), p);
  }
  const double perf = cost::performance_integral(traj, errs, w);
  CHECK(cost::penalized_cost(p, ctx, *scen, spec, w) == perf);
}

TEST_CASE("bit-domain objective equals the decoded continuous objective bitwise") {
  const auto scen = consensus1();
  const cost::EpochContext ctx = consensus_ctx(*scen);
  lyapunov::StabilitySpec spec;
  cost::CostWeights w;

  const auto region = scen->initial_region();
  const auto alloc = encoding::allocate_bits(region, Eigen::VectorXd::Constant(5, 5.0),
                                             encoding::BitMode::fixed, 2);
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    encoding::Bitstring b(static_cast<std::size_t>(alloc.n_total));
    for (auto& bit : b) bit = static_cast<std::uint8_t>(rng.bits(1));
    const double via_bits = cost::exact_bit_cost(b, alloc, region, ctx, *scen, spec, w);
    const double direct =
        cost::penalized_cost(encoding::decode(b, alloc, region), ctx, *scen, spec, w);
    CHECK(via_bits == direct);
  }
}

TEST_CASE("integration failure maps to the barrier value") {
  const auto scen = consensus1();
  cost::EpochContext ctx = consensus_ctx(*scen);
  ctx.x_start.setConstant(100.0);  // alpha=beta=k=0 leaves x' = x + x^3: escape
  Eigen::VectorXd p = Eigen::VectorXd::Zero(5);
  lyapunov::StabilitySpec spec;
  cost::CostWeights w;
  CHECK(cost::penalized_cost(p, ctx, *scen, spec, w) == cost::kBarrierCost);
}
