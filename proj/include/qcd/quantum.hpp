#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "qcd/encoding.hpp"
#include "qcd/surrogate.hpp"
#include "qcd/util.hpp"

namespace qcd::quantum {

using StateVector = Eigen::VectorXcd;  // 2^n amplitudes, qubit r = bit r of the index

// CNOT pattern of the entangling layer.
enum class Entangle { linear, reverse_linear, full };

// Hardware-efficient circuit: per repetition a Y-rotation layer, a Z-rotation
// layer and a CNOT entangling layer, plus one final Y+Z rotation layer.
struct Ansatz {
  int n_qubits = 0;
  int reps = 2;
  Entangle entangle = Entangle::linear;

  int n_params() const { return 2 * n_qubits * (reps + 1); }
};

struct QiteSettings {
  double tau = 3.0;
  int steps = 60;
  double ridge = 1e-6;
  double init_scale = 0.1;
};

// U(theta)|0...0>. Throws LengthMismatch when theta has the wrong size.
StateVector prepare_state(const Ansatz& a, const Eigen::VectorXd& theta);

// <psi|H|psi> for the diagonal Ising Hamiltonian (z_r = +1 for bit 0).
double hamiltonian_expectation(const surrogate::IsingModel& m, const StateVector& s);

// Diagonal of the Hamiltonian over all basis states (index bit r = qubit r).
Eigen::VectorXd hamiltonian_diagonal(const surrogate::IsingModel& m);

// Exact partial derivatives d|psi>/d theta_i, one column per parameter; each
// column re-runs the circuit with that gate replaced by its derivative.
Eigen::MatrixXcd state_jacobian(const Ansatz& a, const Eigen::VectorXd& theta,
                                const Executor& exec = Executor(1));

struct QiteResult {
  Eigen::VectorXd theta;
  std::vector<double> energy_trace;  // <H> after each step
};

// McLachlan-style variational imaginary-time evolution:
//   A = Re(J^dag J), C = Re(J^dag (H psi)), dtheta = -solve(A + ridge I, C) dtau.
// Initial parameters put the first Y layer at pi/2 (uniform superposition)
// plus uniform noise of amplitude init_scale on every angle.
// Throws LinearSolveFailure if the regularized system cannot be solved.
QiteResult varqite_run(const surrogate::IsingModel& m, const Ansatz& a,
                       const QiteSettings& s, Rng& rng,
                       const Executor& exec = Executor(1));

// k most probable basis states, descending probability, ties broken by the
// ascending MSB-first integer value of the bitstring. Exact probabilities.
std::vector<std::pair<encoding::Bitstring, double>> top_k_bitstrings(const StateVector& s,
                                                                     int k);

}  // namespace qcd::quantum
