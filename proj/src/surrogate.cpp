#include "qcd/surrogate.hpp"

#include <algorithm>
#include <unordered_set>

#include "qcd/errors.hpp"

namespace qcd::surrogate {

double QuadraticSurrogate::evaluate(const encoding::Bitstring& b) const {
  const int n = n_qubits();
  if (static_cast<int>(b.size()) != n)
    throw LengthMismatch("surrogate evaluate: bitstring length mismatch");
  double v = beta0;
  for (int r = 0; r < n; ++r) {
    if (!b[static_cast<std::size_t>(r)]) continue;
    v += linear(r);
    for (int s = r + 1; s < n; ++s)
      if (b[static_cast<std::size_t>(s)]) v += quadratic(pair_index(r, s, n));
  }
  return v;
}

std::vector<encoding::Bitstring> sample_training_set(int n_q, int factor, int minimum,
                                                     Rng& rng) {
  if (n_q < 1) throw InvalidSize("sample_training_set: n_q must be positive");
  const std::uint64_t cube = std::uint64_t{1} << n_q;
  const std::uint64_t want = std::max<std::uint64_t>(
      static_cast<std::uint64_t>(minimum),
      static_cast<std::uint64_t>(factor) * static_cast<std::uint64_t>(coefficient_count(n_q)));
  const std::uint64_t n_tr = std::min(cube, want);

  std::vector<encoding::Bitstring> out;
  out.reserve(n_tr);
  if (n_tr == cube) {
    for (std::uint64_t i = 0; i < cube; ++i)
      out.push_back(encoding::basis_index_to_bits(i, n_q));
    return out;
  }

  std::unordered_set<std::uint64_t> seen;
  const std::uint64_t cap = 50 * n_tr;
  for (std::uint64_t draw = 0; draw < cap && seen.size() < n_tr; ++draw) {
    const std::uint64_t idx = rng.bits(n_q);
    if (seen.insert(idx).second) out.push_back(encoding::basis_index_to_bits(idx, n_q));
  }
  // Deterministic fill in case rejection sampling ran out of budget.
  for (std::uint64_t idx = 0; idx < cube && seen.size() < n_tr; ++idx) {
    if (seen.insert(idx).second) out.push_back(encoding::basis_index_to_bits(idx, n_q));
  }
  return out;
}

QuadraticSurrogate fit_quadratic(const std::vector<encoding::Bitstring>& samples,
                                 const std::vector<double>& values, double ridge) {
  if (samples.size() != values.size() || samples.empty())
    throw LengthMismatch("fit_quadratic: sample/value size mismatch");
  const int n = static_cast<int>(samples.front().size());
  const int n_coeff = coefficient_count(n);

  Eigen::MatrixXd X(samples.size(), n_coeff);
  Eigen::VectorXd y(samples.size());
  for (std::size_t row = 0; row < samples.size(); ++row) {
    const encoding::Bitstring& b = samples[row];
    if (static_cast<int>(b.size()) != n)
      throw LengthMismatch("fit_quadratic: inconsistent bitstring length");
    if (!std::isfinite(values[row])) throw SingularFit("fit_quadratic: non-finite target");
    X(row, 0) = 1.0;
    for (int r = 0; r < n; ++r) X(row, 1 + r) = static_cast<double>(b[static_cast<std::size_t>(r)]);
    int col = 1 + n;
    for (int r = 0; r < n; ++r)
      for (int s = r + 1; s < n; ++s, ++col)
        X(row, col) = static_cast<double>(b[static_cast<std::size_t>(r)] &
                                          b[static_cast<std::size_t>(s)]);
    y(row) = values[row];
  }

  Eigen::MatrixXd gram = X.transpose() * X;
  for (int i = 1; i < n_coeff; ++i) gram(i, i) += ridge;  // constant term unpenalized
  const Eigen::LDLT<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success)
    throw SingularFit("fit_quadratic: normal equations not solvable");
  const Eigen::VectorXd beta = solver.solve(X.transpose() * y);
  if (!beta.allFinite()) throw SingularFit("fit_quadratic: non-finite coefficients");

  QuadraticSurrogate q;
  q.beta0 = beta(0);
  q.linear = beta.segment(1, n);
  q.quadratic = beta.segment(1 + n, n_coeff - 1 - n);
  return q;
}

IsingModel qubo_to_ising(const QuadraticSurrogate& q) {
  const int n = q.n_qubits();
  IsingModel m;
  m.eta0 = q.beta0 + 0.5 * q.linear.sum() + 0.25 * q.quadratic.sum();
  m.fields = -0.5 * q.linear;
  m.couplings = 0.25 * q.quadratic;
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s) {
      const double quarter = 0.25 * q.quadratic(pair_index(r, s, n));
      m.fields(r) -= quarter;
      m.fields(s) -= quarter;
    }
  return m;
}

double ising_energy(const IsingModel& m, const Eigen::VectorXi& z) {
  const int n = m.n_qubits();
  if (static_cast<int>(z.size()) != n)
    throw DimensionMismatch("ising_energy: spin vector length mismatch");
  for (int r = 0; r < n; ++r)
    if (z(r) != 1 && z(r) != -1) throw InvalidSpin("ising_energy: spins must be +-1");
  double e = m.eta0;
  for (int r = 0; r < n; ++r) {
    e += m.fields(r) * z(r);
    for (int s = r + 1; s < n; ++s)
      e += m.couplings(pair_index(r, s, n)) * z(r) * z(s);
  }
  return e;
}

Eigen::VectorXi spins_from_bits(const encoding::Bitstring& b) {
  Eigen::VectorXi z(static_cast<Eigen::Index>(b.size()));
  for (std::size_t r = 0; r < b.size(); ++r) z(static_cast<Eigen::Index>(r)) = b[r] ? -1 : 1;
  return z;
}

}  // namespace qcd::surrogate
