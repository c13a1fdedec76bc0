#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qcd/encoding.hpp"
#include "qcd/util.hpp"

namespace qcd::surrogate {

// Quadratic pseudo-Boolean model: beta0 + sum_r beta_r b_r
// + sum_{r<s} beta_rs b_r b_s. Pair coefficients are stored row-major over
// the strict upper triangle.
struct QuadraticSurrogate {
  double beta0 = 0.0;
  Eigen::VectorXd linear;     // n_q
  Eigen::VectorXd quadratic;  // n_q*(n_q-1)/2

  int n_qubits() const { return static_cast<int>(linear.size()); }
  double evaluate(const encoding::Bitstring& b) const;
};

// Spin form of the surrogate under b = (1-z)/2, z in {-1,+1}.
struct IsingModel {
  double eta0 = 0.0;
  Eigen::VectorXd fields;     // n_q
  Eigen::VectorXd couplings;  // strict upper triangle, same layout

  int n_qubits() const { return static_cast<int>(fields.size()); }
};

inline int pair_index(int r, int s, int n) {
  // r < s; row-major offset into the strict upper triangle.
  return r * n - r * (r + 1) / 2 + (s - r - 1);
}

// Number of surrogate coefficients for n_q binary variables.
inline int coefficient_count(int n_q) { return 1 + n_q + n_q * (n_q - 1) / 2; }

// N_tr = min(2^n_q, max(minimum, factor * coefficient_count)) distinct uniform
// bitstrings; the full cube is returned in natural order when it is smaller.
std::vector<encoding::Bitstring> sample_training_set(int n_q, int factor, int minimum,
                                                     Rng& rng);

// Ridge-regularized least squares on the design matrix [1, b_r, b_r b_s];
// the constant term is not penalized. The default ridge keeps duplicate or
// collinear samples solvable while biasing exact-quadratic recovery by well
// under 1e-8. Throws SingularFit when the normal equations cannot be solved.
QuadraticSurrogate fit_quadratic(const std::vector<encoding::Bitstring>& samples,
                                 const std::vector<double>& values, double ridge = 1e-10);

IsingModel qubo_to_ising(const QuadraticSurrogate& q);

// E(z) = eta0 + sum eta_r z_r + sum_{r<s} eta_rs z_r z_s, entries must be +-1.
double ising_energy(const IsingModel& m, const Eigen::VectorXi& z);

// Spin vector of a bitstring under z_r = 1 - 2 b_r.
Eigen::VectorXi spins_from_bits(const encoding::Bitstring& b);

}  // namespace qcd::surrogate
