#include "qcd/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcd/errors.hpp"

namespace qcd::quantum {

namespace {

using Complex = std::complex<double>;

enum class GateKind { ry, rz, cnot };

struct Gate {
  GateKind kind;
  int qubit = 0;    // rotation target or CNOT control
  int target = 0;   // CNOT target
  int param = -1;   // rotation parameter index, -1 for CNOT
};

std::vector<Gate> gate_list(const Ansatz& a) {
  std::vector<Gate> gates;
  int param = 0;
  for (int rep = 0; rep <= a.reps; ++rep) {
    for (int q = 0; q < a.n_qubits; ++q) gates.push_back({GateKind::ry, q, 0, param++});
    for (int q = 0; q < a.n_qubits; ++q) gates.push_back({GateKind::rz, q, 0, param++});
    if (rep < a.reps) {
      switch (a.entangle) {
        case Entangle::linear:
          for (int q = 0; q + 1 < a.n_qubits; ++q)
            gates.push_back({GateKind::cnot, q, q + 1, -1});
          break;
        case Entangle::reverse_linear:
          for (int q = a.n_qubits - 2; q >= 0; --q)
            gates.push_back({GateKind::cnot, q, q + 1, -1});
          break;
        case Entangle::full:
          for (int q = 0; q + 1 < a.n_qubits; ++q)
            for (int t = q + 1; t < a.n_qubits; ++t)
              gates.push_back({GateKind::cnot, q, t, -1});
          break;
      }
    }
  }
  return gates;
}

// In-place single-qubit rotation about Y; optionally the analytic derivative.
void apply_ry(StateVector& psi, int q, double theta, bool derivative) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  // d/dtheta R_y = (1/2) [[-sin, -cos], [cos, -sin]] at half angle.
  const double m00 = derivative ? -0.5 * s : c;
  const double m01 = derivative ? -0.5 * c : -s;
  const double m10 = derivative ? 0.5 * c : s;
  const double m11 = derivative ? -0.5 * s : c;
  const std::uint64_t stride = std::uint64_t{1} << q;
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
    for (std::uint64_t i = base; i < base + stride; ++i) {
      const Complex a0 = psi(static_cast<Eigen::Index>(i));
      const Complex a1 = psi(static_cast<Eigen::Index>(i + stride));
      psi(static_cast<Eigen::Index>(i)) = m00 * a0 + m01 * a1;
      psi(static_cast<Eigen::Index>(i + stride)) = m10 * a0 + m11 * a1;
    }
  }
}

void apply_rz(StateVector& psi, int q, double theta, bool derivative) {
  Complex d0 = std::exp(Complex(0.0, -0.5 * theta));
  Complex d1 = std::exp(Complex(0.0, 0.5 * theta));
  if (derivative) {
    d0 *= Complex(0.0, -0.5);
    d1 *= Complex(0.0, 0.5);
  }
  const std::uint64_t stride = std::uint64_t{1} << q;
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
    for (std::uint64_t i = base; i < base + stride; ++i) {
      psi(static_cast<Eigen::Index>(i)) *= d0;
      psi(static_cast<Eigen::Index>(i + stride)) *= d1;
    }
  }
}

void apply_cnot(StateVector& psi, int control, int target) {
  const std::uint64_t cbit = std::uint64_t{1} << control;
  const std::uint64_t tbit = std::uint64_t{1} << target;
  const std::uint64_t dim = static_cast<std::uint64_t>(psi.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cbit) && !(i & tbit))
      std::swap(psi(static_cast<Eigen::Index>(i)), psi(static_cast<Eigen::Index>(i | tbit)));
  }
}

// Runs the circuit; with derivative_param >= 0 the corresponding rotation is
// replaced by its analytic derivative.
StateVector run_circuit(const Ansatz& a, const Eigen::VectorXd& theta,
                        int derivative_param) {
  StateVector psi = StateVector::Zero(Eigen::Index{1} << a.n_qubits);
  psi(0) = 1.0;
  for (const Gate& g : gate_list(a)) {
    switch (g.kind) {
      case GateKind::ry:
        apply_ry(psi, g.qubit, theta(g.param), g.param == derivative_param);
        break;
      case GateKind::rz:
        apply_rz(psi, g.qubit, theta(g.param), g.param == derivative_param);
        break;
      case GateKind::cnot:
        apply_cnot(psi, g.qubit, g.target);
        break;
    }
  }
  return psi;
}

}  // namespace

StateVector prepare_state(const Ansatz& a, const Eigen::VectorXd& theta) {
  if (theta.size() != a.n_params())
    throw LengthMismatch("prepare_state: parameter count mismatch");
  return run_circuit(a, theta, -1);
}

Eigen::VectorXd hamiltonian_diagonal(const surrogate::IsingModel& m) {
  const int n = m.n_qubits();
  const std::uint64_t dim = std::uint64_t{1} << n;
  Eigen::VectorXd diag(static_cast<Eigen::Index>(dim));
  for (std::uint64_t idx = 0; idx < dim; ++idx) {
    double e = m.eta0;
    for (int r = 0; r < n; ++r) {
      const double zr = (idx >> r) & 1 ? -1.0 : 1.0;
      e += m.fields(r) * zr;
      for (int s = r + 1; s < n; ++s) {
        const double zs = (idx >> s) & 1 ? -1.0 : 1.0;
        e += m.couplings(surrogate::pair_index(r, s, n)) * zr * zs;
      }
    }
    diag(static_cast<Eigen::Index>(idx)) = e;
  }
  return diag;
}

double hamiltonian_expectation(const surrogate::IsingModel& m, const StateVector& s) {
  const Eigen::Index dim = Eigen::Index{1} << m.n_qubits();
  if (s.size() != dim)
    throw DimensionMismatch("hamiltonian_expectation: state dimension mismatch");
  const Eigen::VectorXd diag = hamiltonian_diagonal(m);
  double e = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) e += std::norm(s(i)) * diag(i);
  return e;
}

Eigen::MatrixXcd state_jacobian(const Ansatz& a, const Eigen::VectorXd& theta,
                                const Executor& exec) {
  if (theta.size() != a.n_params())
    throw LengthMismatch("state_jacobian: parameter count mismatch");
  const Eigen::Index dim = Eigen::Index{1} << a.n_qubits;
  Eigen::MatrixXcd jac(dim, a.n_params());
  exec.parallel_for(static_cast<std::size_t>(a.n_params()), [&](std::size_t i) {
    jac.col(static_cast<Eigen::Index>(i)) = run_circuit(a, theta, static_cast<int>(i));
  });
  return jac;
}

QiteResult varqite_run(const surrogate::IsingModel& m, const Ansatz& a,
                       const QiteSettings& s, Rng& rng, const Executor& exec) {
  QiteResult result;
  result.theta.resize(a.n_params());
  for (Eigen::Index i = 0; i < result.theta.size(); ++i)
    result.theta(i) = rng.uniform(-s.init_scale, s.init_scale);
  // Offset the first Y layer to pi/2 so the flow starts near the uniform
  // superposition: every bitstring begins with weight, which keeps the
  // imaginary-time reweighting from stalling in a corner basin.
  for (int q = 0; q < a.n_qubits; ++q) result.theta(q) += M_PI / 2.0;

  const Eigen::VectorXd diag = hamiltonian_diagonal(m);
  const double dtau = s.tau / static_cast<double>(s.steps);
  result.energy_trace.reserve(static_cast<std::size_t>(s.steps));

  for (int step = 0; step < s.steps; ++step) {
    const StateVector psi = prepare_state(a, result.theta);
    const Eigen::MatrixXcd jac = state_jacobian(a, result.theta, exec);

    const Eigen::MatrixXd A = (jac.adjoint() * jac).real();
    const Eigen::VectorXcd h_psi = diag.array() * psi.array();
    const Eigen::VectorXd C = (jac.adjoint() * h_psi).real();

    Eigen::MatrixXd reg = A;
    reg.diagonal().array() += s.ridge;
    const Eigen::LDLT<Eigen::MatrixXd> solver(reg);
    if (solver.info() != Eigen::Success)
      throw LinearSolveFailure("varqite: regularized system not solvable");
    const Eigen::VectorXd dtheta = -dtau * solver.solve(C);
    if (!dtheta.allFinite())
      throw LinearSolveFailure("varqite: non-finite parameter update");

    result.theta += dtheta;
    const StateVector updated = prepare_state(a, result.theta);
    double energy = 0.0;
    for (Eigen::Index i = 0; i < updated.size(); ++i)
      energy += std::norm(updated(i)) * diag(i);
    result.energy_trace.push_back(energy);
  }
  return result;
}

std::vector<std::pair<encoding::Bitstring, double>> top_k_bitstrings(const StateVector& s,
                                                                     int k) {
  if (k < 1) throw InvalidSize("top_k_bitstrings: k must be positive");
  const std::uint64_t dim = static_cast<std::uint64_t>(s.size());
  int n_bits = 0;
  while ((std::uint64_t{1} << n_bits) < dim) ++n_bits;

  std::vector<std::uint64_t> order(dim);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  // Tie-break on the MSB-first integer value of the bitstring, which for the
  // index convention (bit r = qubit r) is its bit reversal.
  std::vector<std::uint64_t> msb_value(dim);
  std::vector<double> prob(dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    prob[i] = std::norm(s(static_cast<Eigen::Index>(i)));
    std::uint64_t v = 0;
    for (int r = 0; r < n_bits; ++r) v = (v << 1) | ((i >> r) & 1);
    msb_value[i] = v;
  }
  std::sort(order.begin(), order.end(), [&](std::uint64_t lhs, std::uint64_t rhs) {
    if (prob[lhs] != prob[rhs]) return prob[lhs] > prob[rhs];
    return msb_value[lhs] < msb_value[rhs];
  });

  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), dim);
  std::vector<std::pair<encoding::Bitstring, double>> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i)
    out.emplace_back(encoding::basis_index_to_bits(order[i], n_bits), prob[order[i]]);
  return out;
}

}  // namespace qcd::quantum
