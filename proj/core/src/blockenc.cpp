#include "qkrylov/blockenc.hpp"

#include <cmath>

namespace qkrylov {

namespace {

int ceil_log2(std::size_t count) {
  int bits = 0;
  while ((std::size_t{1} << bits) < count) ++bits;
  return bits;
}

}  // namespace

BlockEncoding build_encoding(const PauliSum& h, int total_qubit_guard) {
  BlockEncoding be;
  be.n_sys = h.n_qubits();
  be.n_aux = ceil_log2(h.size());
  if (be.n_sys + be.n_aux > total_qubit_guard)
    throw SizeGuard("build_encoding: " + std::to_string(be.n_sys + be.n_aux) +
                    " total qubits exceeds the guard of " +
                    std::to_string(total_qubit_guard));

  const std::int64_t aux_dim = std::int64_t{1} << be.n_aux;
  const std::int64_t sys_dim = be.system_dim();
  const std::int64_t dim = aux_dim * sys_dim;

  be.u_op = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::int64_t i = 0; i < aux_dim; ++i) {
    if (i < static_cast<std::int64_t>(h.size())) {
      be.u_op.block(i * sys_dim, i * sys_dim, sys_dim, sys_dim) =
          dense_matrix(h.terms()[static_cast<std::size_t>(i)].term);
    } else {
      be.u_op.block(i * sys_dim, i * sys_dim, sys_dim, sys_dim) =
          Eigen::MatrixXcd::Identity(sys_dim, sys_dim);
    }
  }

  be.g_vec = Eigen::VectorXcd::Zero(aux_dim);
  for (std::size_t i = 0; i < h.size(); ++i)
    be.g_vec[static_cast<std::int64_t>(i)] = std::sqrt(h.terms()[i].coeff);

  const Eigen::MatrixXcd aux_reflect =
      2.0 * be.g_vec * be.g_vec.adjoint() -
      Eigen::MatrixXcd::Identity(aux_dim, aux_dim);
  be.r_op = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::int64_t a = 0; a < aux_dim; ++a)
    for (std::int64_t b = 0; b < aux_dim; ++b)
      be.r_op.block(a * sys_dim, b * sys_dim, sys_dim, sys_dim) =
          aux_reflect(a, b) * Eigen::MatrixXcd::Identity(sys_dim, sys_dim);
  return be;
}

Eigen::MatrixXcd chebyshev_block(const BlockEncoding& be, int k, int k_guard) {
  if (k < 0 || k > k_guard)
    throw SizeGuard("chebyshev_block: k outside [0, " +
                    std::to_string(k_guard) + "]");
  const std::int64_t sys_dim = be.system_dim();
  const std::int64_t aux_dim = std::int64_t{1} << be.n_aux;

  const Eigen::MatrixXcd iterate = be.r_op * be.u_op;
  Eigen::MatrixXcd power =
      Eigen::MatrixXcd::Identity(be.total_dim(), be.total_dim());
  for (int step = 0; step < k; ++step) power = iterate * power;

  // (<G| (x) 1) power (|G> (x) 1)
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(sys_dim, sys_dim);
  for (std::int64_t a = 0; a < aux_dim; ++a)
    for (std::int64_t b = 0; b < aux_dim; ++b)
      block += std::conj(be.g_vec[a]) * be.g_vec[b] *
               power.block(a * sys_dim, b * sys_dim, sys_dim, sys_dim);
  return block;
}

double measurement_identity(const BlockEncoding& be, const StateVec& psi0,
                            int k, int k_guard) {
  if (k < 0 || k > k_guard)
    throw SizeGuard("measurement_identity: k outside [0, " +
                    std::to_string(k_guard) + "]");
  if (psi0.n_qubits() != be.n_sys)
    throw DimensionMismatch("measurement_identity: system size differs");
  if (std::abs(psi0.norm() - 1.0) > 1e-10)
    throw NotNormalized("measurement_identity: psi0 must be unit norm");

  const std::int64_t sys_dim = be.system_dim();
  const std::int64_t aux_dim = std::int64_t{1} << be.n_aux;

  Eigen::VectorXcd state(be.total_dim());
  for (std::int64_t a = 0; a < aux_dim; ++a)
    state.segment(a * sys_dim, sys_dim) = be.g_vec[a] * psi0.amps();

  for (int step = 0; step < k / 2; ++step)
    state = be.r_op * (be.u_op * state);

  const Eigen::MatrixXcd& observable = (k % 2 == 0) ? be.r_op : be.u_op;
  return state.dot(observable * state).real();
}

}  // namespace qkrylov
