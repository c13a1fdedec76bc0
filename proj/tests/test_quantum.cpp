#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "qcd/errors.hpp"
#include "qcd/quantum.hpp"

using namespace qcd;
using namespace qcd::quantum;
using qcd::surrogate::IsingModel;

namespace {

IsingModel random_model(int n, Rng& rng) {
  IsingModel m;
  m.eta0 = 0.0;
  m.fields.resize(n);
  m.couplings.resize(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i) m.fields(i) = rng.uniform(-1, 1);
  for (Eigen::Index i = 0; i < m.couplings.size(); ++i) m.couplings(i) = rng.uniform(-1, 1);
  return m;
}

double brute_min(const IsingModel& m) {
  const Eigen::VectorXd diag = hamiltonian_diagonal(m);
  return diag.minCoeff();
}

}  // namespace

TEST_CASE("zero angles prepare the all-zeros basis state") {
  const Ansatz a{3, 2};
  const StateVector psi = prepare_state(a, Eigen::VectorXd::Zero(a.n_params()));
  CHECK(std::abs(psi(0) - std::complex<double>(1, 0)) < 1e-14);
  CHECK(psi.tail(psi.size() - 1).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("a pi Y-rotation flips one qubit") {
  const Ansatz a{1, 0};
  Eigen::VectorXd theta(2);
  theta << M_PI, 0.0;
  const StateVector psi = prepare_state(a, theta);
  CHECK(std::abs(psi(1)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(psi(0)) < 1e-12);
}

TEST_CASE("prepared states are normalized for random parameters") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Ansatz a{4, 2};
    Eigen::VectorXd theta(a.n_params());
    for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = rng.uniform(-3.0, 3.0);
    CHECK(std::abs(prepare_state(a, theta).norm() - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(prepare_state(Ansatz{2, 1}, Eigen::VectorXd::Zero(3)), qcd::LengthMismatch);
}

TEST_CASE("expectation on a basis state equals the ising energy") {
  Rng rng(9);
  const IsingModel m = random_model(4, rng);
  const Eigen::VectorXd diag = hamiltonian_diagonal(m);
  for (std::uint64_t idx : {0ull, 5ull, 11ull, 15ull}) {
    StateVector basis = StateVector::Zero(16);
    basis(static_cast<Eigen::Index>(idx)) = 1.0;
    const auto b = encoding::basis_index_to_bits(idx, 4);
    CHECK(hamiltonian_expectation(m, basis) ==
          doctest::Approx(surrogate::ising_energy(m, surrogate::spins_from_bits(b))));
    CHECK(diag(static_cast<Eigen::Index>(idx)) ==
          doctest::Approx(surrogate::ising_energy(m, surrogate::spins_from_bits(b))));
  }
}

TEST_CASE("uniform superposition averages pure fields to zero") {
  IsingModel m;
  m.eta0 = 0.0;
  m.fields.resize(3);
  m.fields << 0.7, -1.2, 0.4;
  m.couplings = Eigen::VectorXd::Zero(3);
  StateVector uniform = StateVector::Constant(8, std::complex<double>(1.0 / std::sqrt(8.0), 0));
  CHECK(hamiltonian_expectation(m, uniform) == doctest::Approx(0.0).epsilon(1e-12));

  SUBCASE("identity-only model gives eta0 for any normalized state") {
    IsingModel id;
    id.eta0 = 2.5;
    id.fields = Eigen::VectorXd::Zero(3);
    id.couplings = Eigen::VectorXd::Zero(3);
    Rng rng(3);
    StateVector psi(8);
    for (int i = 0; i < 8; ++i)
      psi(i) = std::complex<double>(rng.uniform(-1, 1), rng.uniform(-1, 1));
    psi.normalize();
    CHECK(hamiltonian_expectation(id, psi) == doctest::Approx(2.5).epsilon(1e-12));
  }
}

TEST_CASE("jacobian columns match central finite differences") {
  Rng rng(17);
  for (int trial = 0; trial < 4; ++trial) {
    const Ansatz a{2 + static_cast<int>(rng.bits(1)), 1 + static_cast<int>(rng.bits(1))};
    Eigen::VectorXd theta(a.n_params());
    for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = rng.uniform(-1.5, 1.5);
    const Eigen::MatrixXcd jac = state_jacobian(a, theta);
    const double h = 1e-6;
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      Eigen::VectorXd tp = theta, tm = theta;
      tp(i) += h;
      tm(i) -= h;
      const StateVector fd = (prepare_state(a, tp) - prepare_state(a, tm)) / (2 * h);
      CHECK((jac.col(i) - fd).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("state derivative is orthogonal to the state in the real sense") {
  Rng rng(23);
  const Ansatz a{3, 2};
  Eigen::VectorXd theta(a.n_params());
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = rng.uniform(-2, 2);
  const StateVector psi = prepare_state(a, theta);
  const Eigen::MatrixXcd jac = state_jacobian(a, theta);
  for (Eigen::Index i = 0; i < theta.size(); ++i)
    CHECK(std::abs((jac.col(i).adjoint() * psi)(0).real()) < 1e-10);
}

TEST_CASE("hand derivative of a single Y rotation at zero") {
  const Ansatz a{1, 0};
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(2);
  const Eigen::MatrixXcd jac = state_jacobian(a, theta);
  // -(i/2) Y |0> = (1/2)|1>.
  CHECK(std::abs(jac(0, 0)) < 1e-14);
  CHECK(std::abs(jac(1, 0) - std::complex<double>(0.5, 0.0)) < 1e-14);
}

TEST_CASE("identity-only hamiltonian freezes the parameters") {
  IsingModel id;
  id.eta0 = 4.0;
  id.fields = Eigen::VectorXd::Zero(2);
  id.couplings = Eigen::VectorXd::Zero(1);
  const Ansatz a{2, 1};
  QiteSettings s;
  s.steps = 5;
  Rng rng(5);
  Rng rng_copy(5);
  Eigen::VectorXd theta0(a.n_params());
  for (Eigen::Index i = 0; i < theta0.size(); ++i)
    theta0(i) = rng_copy.uniform(-s.init_scale, s.init_scale);
  for (int q = 0; q < a.n_qubits; ++q) theta0(q) += M_PI / 2.0;

  const QiteResult r = varqite_run(id, a, s, rng);
  // C = eta0 * Re<d psi|psi> vanishes analytically; what remains is roundoff
  // amplified by the ridge-regularized solve.
  CHECK((r.theta - theta0).cwiseAbs().maxCoeff() < 1e-8);
  for (double e : r.energy_trace) CHECK(e == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("single-qubit ground state is reached from five seeds") {
  IsingModel m;
  m.eta0 = 0.0;
  m.fields.resize(1);
  m.fields << 1.0;  // ground state |1>, energy -1
  m.couplings.resize(0);
  const Ansatz a{1, 2};
  QiteSettings s;
  s.tau = 3.0;
  s.steps = 60;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const QiteResult r = varqite_run(m, a, s, rng);
    CHECK(r.energy_trace.back() <= -0.9);
    const StateVector psi = prepare_state(a, r.theta);
    const auto top = top_k_bitstrings(psi, 1);
    CHECK(top[0].first == encoding::Bitstring{1});
  }
}

TEST_CASE("energy trace decreases for random four-qubit models") {
  QiteSettings s;
  s.tau = 3.0;
  s.steps = 40;
  const Ansatz a{4, 2};
  int improved = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const IsingModel m = random_model(4, rng);
    const QiteResult r = varqite_run(m, a, s, rng);
    if (r.energy_trace.back() <= r.energy_trace.front()) ++improved;
    // Ground energy always lower-bounds the reported expectations.
    const double lower = brute_min(m);
    for (double e : r.energy_trace) CHECK(e >= lower - 1e-9);
    // The re-prepared state stays normalized after every update.
    CHECK(std::abs(prepare_state(a, r.theta).norm() - 1.0) < 1e-10);
  }
  CHECK(improved >= 18);
}

TEST_CASE("the quadratic form A is positive semidefinite") {
  Rng rng(31);
  const Ansatz a{3, 1};
  Eigen::VectorXd theta(a.n_params());
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = rng.uniform(-2, 2);
  const Eigen::MatrixXcd jac = state_jacobian(a, theta);
  const Eigen::MatrixXd A = (jac.adjoint() * jac).real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("top-k ordering, tie rule and exhaustion") {
  StateVector psi = StateVector::Zero(4);
  psi(encoding::bits_to_basis_index({0, 1})) = std::sqrt(0.7);  // "01"
  psi(encoding::bits_to_basis_index({1, 0})) = std::sqrt(0.3);  // "10"
  const auto top1 = top_k_bitstrings(psi, 1);
  REQUIRE(top1.size() == 1);
  CHECK(top1[0].first == encoding::Bitstring{0, 1});
  CHECK(top1[0].second == doctest::Approx(0.7));

  const auto all = top_k_bitstrings(psi, 100);
  CHECK(all.size() == 4);
  double total = 0.0;
  for (const auto& [b, p] : all) total += p;
  CHECK(total == doctest::Approx(1.0));

  StateVector uniform = StateVector::Constant(8, std::complex<double>(1 / std::sqrt(8.0), 0));
  const auto top3 = top_k_bitstrings(uniform, 3);
  CHECK(top3[0].first == encoding::Bitstring{0, 0, 0});
  CHECK(top3[1].first == encoding::Bitstring{0, 0, 1});
  CHECK(top3[2].first == encoding::Bitstring{0, 1, 0});
}
