#include "qkrylov/state.hpp"

#include <bit>
#include <cmath>

#include "qkrylov/rng.hpp"

namespace qkrylov {

namespace {

// Accumulates w * P|v> into `out` for P = sign * prod i^{xz} X^x Z^z:
//   P|b> = phase * (-1)^{popcount(z & b)} |b ^ x>.
void add_pauli_action(const PauliTerm& p, std::complex<double> weight,
                      const Eigen::VectorXcd& v, Eigen::VectorXcd& out) {
  const std::uint64_t x = p.x_bits();
  const std::uint64_t z = p.z_bits();
  const std::complex<double> w =
      weight * p.hermitian_phase() * static_cast<double>(p.sign());
  const std::int64_t dim = v.size();
  for (std::int64_t b = 0; b < dim; ++b) {
    const bool flip = std::popcount(static_cast<std::uint64_t>(b) & z) & 1;
    const std::complex<double> amp = flip ? -w * v[b] : w * v[b];
    out[static_cast<std::int64_t>(static_cast<std::uint64_t>(b) ^ x)] += amp;
  }
}

std::complex<double> pairwise_dot(const Eigen::VectorXcd& u,
                                  const Eigen::VectorXcd& v, std::int64_t lo,
                                  std::int64_t hi) {
  if (hi - lo <= 64) {
    std::complex<double> sum = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) sum += std::conj(u[i]) * v[i];
    return sum;
  }
  const std::int64_t mid = lo + (hi - lo) / 2;
  return pairwise_dot(u, v, lo, mid) + pairwise_dot(u, v, mid, hi);
}

}  // namespace

StateVec::StateVec(int n_qubits, Eigen::VectorXcd amps)
    : amps_(std::move(amps)), n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 30)
    throw SizeGuard("StateVec: qubit count out of range");
  if (amps_.size() != (std::int64_t{1} << n_qubits))
    throw DimensionMismatch("StateVec: amplitude vector has length " +
                            std::to_string(amps_.size()) + ", expected 2^" +
                            std::to_string(n_qubits));
}

StateVec StateVec::zero_state(int n_qubits) {
  return basis_state(n_qubits, 0);
}

StateVec StateVec::basis_state(int n_qubits, std::uint64_t index) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(std::int64_t{1} << n_qubits);
  if (index >= static_cast<std::uint64_t>(amps.size()))
    throw DimensionMismatch("basis_state: index out of range");
  amps[static_cast<std::int64_t>(index)] = 1.0;
  return StateVec(n_qubits, std::move(amps));
}

StateVec StateVec::random_state(int n_qubits, std::uint64_t seed) {
  RandomStream rng(seed);
  Eigen::VectorXcd amps(std::int64_t{1} << n_qubits);
  for (std::int64_t i = 0; i < amps.size(); ++i)
    amps[i] = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
  amps /= amps.norm();
  return StateVec(n_qubits, std::move(amps));
}

double StateVec::norm() const { return amps_.norm(); }

StateVec StateVec::normalized() const {
  const double n = norm();
  if (n == 0.0) throw NotNormalized("cannot normalize the zero vector");
  return StateVec(n_qubits_, amps_ / n);
}

std::complex<double> inner(const StateVec& u, const StateVec& v) {
  if (u.n_qubits() != v.n_qubits())
    throw DimensionMismatch("inner: qubit counts differ");
  return pairwise_dot(u.amps(), v.amps(), 0, u.dim());
}

std::complex<double> inner(const Eigen::VectorXcd& u,
                           const Eigen::VectorXcd& v) {
  if (u.size() != v.size())
    throw DimensionMismatch("inner: vector lengths differ");
  return pairwise_dot(u, v, 0, u.size());
}

StateVec apply_pauli(const PauliTerm& p, const StateVec& v) {
  if (p.n_qubits() != v.n_qubits())
    throw DimensionMismatch("apply_pauli: qubit counts differ");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.dim());
  add_pauli_action(p, 1.0, v.amps(), out);
  return StateVec(v.n_qubits(), std::move(out));
}

StateVec apply_sum(const PauliSum& h, const StateVec& v) {
  if (h.n_qubits() != v.n_qubits())
    throw DimensionMismatch("apply_sum: qubit counts differ");
  Eigen::VectorXcd out(v.dim());
  apply_sum_into(h, v.amps(), out);
  return StateVec(v.n_qubits(), std::move(out));
}

void apply_sum_into(const PauliSum& h, const Eigen::VectorXcd& v,
                    Eigen::VectorXcd& out) {
  if (v.size() != (std::int64_t{1} << h.n_qubits()))
    throw DimensionMismatch("apply_sum_into: dimension mismatch");
  out.setZero(v.size());
  for (const auto& [coeff, term] : h.terms())
    add_pauli_action(term, coeff, v, out);
}

Eigen::MatrixXcd dense_matrix(const PauliTerm& p) {
  if (p.n_qubits() > 14)
    throw SizeGuard("dense_matrix: refusing n > 14 qubits");
  const std::int64_t dim = std::int64_t{1} << p.n_qubits();
  const std::complex<double> w =
      p.hermitian_phase() * static_cast<double>(p.sign());
  const std::uint64_t x = p.x_bits(), z = p.z_bits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::int64_t b = 0; b < dim; ++b) {
    const bool flip = std::popcount(static_cast<std::uint64_t>(b) & z) & 1;
    m(static_cast<std::int64_t>(static_cast<std::uint64_t>(b) ^ x), b) =
        flip ? -w : w;
  }
  return m;
}

Eigen::MatrixXcd dense_matrix(const PauliSum& h) {
  if (h.n_qubits() > 14)
    throw SizeGuard("dense_matrix: refusing n > 14 qubits");
  const std::int64_t dim = std::int64_t{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [coeff, term] : h.terms()) {
    const std::complex<double> w =
        coeff * term.hermitian_phase() * static_cast<double>(term.sign());
    const std::uint64_t x = term.x_bits(), z = term.z_bits();
    for (std::int64_t b = 0; b < dim; ++b) {
      const bool flip = std::popcount(static_cast<std::uint64_t>(b) & z) & 1;
      m(static_cast<std::int64_t>(static_cast<std::uint64_t>(b) ^ x), b) +=
          flip ? -w : w;
    }
  }
  return m;
}

}  // namespace qkrylov
