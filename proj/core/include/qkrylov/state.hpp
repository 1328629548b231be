#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "qkrylov/pauli.hpp"

namespace qkrylov {

/// Dense statevector over 2^n computational basis states. Basis index bit
/// (n-1-q) holds the state of qubit q, matching the PauliTerm mask layout:
/// the binary expansion of an index reads as the qubit string left to right.
class StateVec {
 public:
  StateVec(int n_qubits, Eigen::VectorXcd amps);

  /// |00...0>
  static StateVec zero_state(int n_qubits);

  /// Computational basis state |index>.
  static StateVec basis_state(int n_qubits, std::uint64_t index);

  /// Haar-ish random unit vector from a deterministic stream (test/CLI use).
  static StateVec random_state(int n_qubits, std::uint64_t seed);

  int n_qubits() const { return n_qubits_; }
  std::int64_t dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amps() const { return amps_; }
  Eigen::VectorXcd& amps() { return amps_; }

  double norm() const;
  StateVec normalized() const;

 private:
  Eigen::VectorXcd amps_;
  int n_qubits_;
};

/// <u|v> with conjugation on u. Pairwise summation, so the result does not
/// depend on how callers batch their work.
std::complex<double> inner(const StateVec& u, const StateVec& v);
std::complex<double> inner(const Eigen::VectorXcd& u,
                           const Eigen::VectorXcd& v);

/// Exact action of a signed Pauli term; preserves the norm.
StateVec apply_pauli(const PauliTerm& p, const StateVec& v);

/// sum_i coeff_i sign_i P_i v via index arithmetic, one term at a time in the
/// sum's canonical order (bit-for-bit deterministic).
StateVec apply_sum(const PauliSum& h, const StateVec& v);

/// In-place variant for hot loops: out is overwritten with H v.
void apply_sum_into(const PauliSum& h, const Eigen::VectorXcd& v,
                    Eigen::VectorXcd& out);

/// Dense 2^n x 2^n matrices, filled by index arithmetic (one entry per column
/// per term). Guarded to n <= 14.
Eigen::MatrixXcd dense_matrix(const PauliTerm& p);
Eigen::MatrixXcd dense_matrix(const PauliSum& h);

}  // namespace qkrylov
