#pragma once

#include <Eigen/Dense>

#include "qkrylov/pauli.hpp"
#include "qkrylov/state.hpp"

namespace qkrylov {

/// Explicit dense block encoding (U, G) of a normalized Pauli sum, plus the
/// reflection R about |G> in the auxiliary register. The auxiliary register
/// holds ceil(log2 T) qubits; index layout is aux (high bits) x system.
///
///   U = sum_i |i><i| (x) sign_i P_i        (identity on padded indices)
///   g_vec[i] = sqrt(coeff_i), zero-padded
///   R = (2|G><G| - 1) (x) 1
///
/// U is self-inverse because each signed Pauli is a Hermitian involution, so
/// (RU)^k block-encodes T_k(H). Dense matrices only: this is a verifier, not
/// a performance path.
struct BlockEncoding {
  int n_sys = 0;
  int n_aux = 0;
  Eigen::MatrixXcd u_op;
  Eigen::MatrixXcd r_op;
  Eigen::VectorXcd g_vec;

  std::int64_t system_dim() const { return std::int64_t{1} << n_sys; }
  std::int64_t total_dim() const { return std::int64_t{1} << (n_aux + n_sys); }
};

BlockEncoding build_encoding(const PauliSum& h, int total_qubit_guard = 12);

/// The system-space block of (RU)^k, equal to T_k(H) by the qubitization
/// identity. k is guarded (default 64).
Eigen::MatrixXcd chebyshev_block(const BlockEncoding& be, int k,
                                 int k_guard = 64);

/// The scalar the measurement loop estimates for moment k:
///   <psi_m| R |psi_m>  (k even)     <psi_m| U |psi_m>  (k odd)
/// with |psi_m> = (RU)^m (|G> (x) |psi0>), m = floor(k/2). Equals mu_k.
double measurement_identity(const BlockEncoding& be, const StateVec& psi0,
                            int k, int k_guard = 64);

}  // namespace qkrylov
